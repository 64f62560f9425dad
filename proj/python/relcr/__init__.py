"""Exact checks of relative complete reducibility for rational matrix groups."""

import json
import os

from . import _core
from ._core import InputError

__all__ = ["InputError", "check", "flags", "verify", "corpus", "g2_fixture", "parse_rational", "OUTCOMES"]

OUTCOMES = ("relcr", "not_relcr", "inconclusive")


def _text(obj):
    if isinstance(obj, (str, os.PathLike)) and os.path.exists(obj):
        with open(obj, encoding="utf-8") as fh:
            return fh.read()
    if isinstance(obj, str):
        return obj
    return json.dumps(obj)


def check(scenario, mode=None):
    """Run a scenario (dict, JSON text or path); returns (outcome, report)."""
    code, report = _core.check(_text(scenario), mode or "")
    return OUTCOMES[code], json.loads(report)


def flags(kspec, ambient_dim=None, minimal_only=False):
    """Enumerate the flags of a torus or G2 K given as a dict."""
    spec = json.loads(_text(kspec))
    if "K" in spec:
        ambient_dim = spec.get("ambient_dim", ambient_dim)
        spec = spec["K"]
    if ambient_dim is None:
        ambient_dim = spec.get("ambient_dim", 7 if spec.get("kind") == "g2" else 0)
    return json.loads(_core.flags(json.dumps(spec), int(ambient_dim), minimal_only))


def verify(certificate):
    accepted, report = _core.verify(_text(certificate))
    return accepted, json.loads(report)


def corpus(directory="", filter="", g2_fixture=""):
    return json.loads(_core.corpus(os.fspath(directory), filter, os.fspath(g2_fixture)))


def g2_fixture():
    return json.loads(_core.g2_fixture())


def parse_rational(text):
    return _core.parse_rational(text)
