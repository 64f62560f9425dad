import json
import pathlib

import pytest

import relcr

ROOT = pathlib.Path(__file__).resolve().parents[2]
PAIRED_TORUS = {"kind": "torus", "lattice_basis": [[1, 0, 0, -1], [0, 1, -1, 0]]}


def scenario(flag):
    return {"ambient_dim": 4, "H": {"flag_stabilizer": flag}, "K": PAIRED_TORUS}


def test_hyperplane_stabilizer_is_relcr():
    outcome, report = relcr.check(scenario([[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]]))
    assert outcome == "relcr"
    assert report["result"]["agreement"] is True


def test_plane_stabilizer_is_not_relcr_in_every_mode():
    s = scenario([[[0, 1, 0, 0], [0, 0, 0, 1]]])
    for mode in ("definition", "minimal", "levi"):
        assert relcr.check(s, mode)[0] == "not_relcr"


def test_scenario_file_and_text_inputs_agree():
    path = ROOT / "scenarios" / "plane_stabilizer_counterexample.json"
    from_path = relcr.check(str(path))
    from_text = relcr.check(path.read_text())
    assert from_path == from_text


def test_flag_patterns():
    assert relcr.flags(PAIRED_TORUS, 4)["count"] == 16
    assert relcr.flags(PAIRED_TORUS, 4, minimal_only=True)["count"] == 8
    assert relcr.flags({"kind": "g2"})["count"] == 24


def test_bad_input_raises():
    with pytest.raises(relcr.InputError):
        relcr.check({"ambient_dim": 4, "H": {"generators": [[["x/2"]]]}, "K": PAIRED_TORUS})
    with pytest.raises(ValueError):
        relcr.parse_rational("1/0")
    assert relcr.parse_rational("6/4") == "3/2"


def test_verify_and_fixture():
    accepted, _ = relcr.verify(str(ROOT / "scenarios" / "paired_torus_empty_certificate.cert.json"))
    assert accepted
    stored = json.loads((ROOT / "data" / "g2_fixture.json").read_text())
    assert relcr.g2_fixture() == stored


def test_corpus_filter():
    summary = relcr.corpus(filter="product")
    assert summary["all_passed"] and summary["total"] >= 2
    assert summary["total"] < relcr.corpus()["total"]
