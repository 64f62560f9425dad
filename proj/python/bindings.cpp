#include "relcr/scenario.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace relcr;

namespace {

// Everything crosses the boundary as JSON text; the Python side decodes it.
json parse_or_input_error(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
}

py::tuple check(const std::string& scenario, const std::string& mode) {
  Scenario s = scenario_from_json(parse_or_input_error(scenario));
  if (!mode.empty()) s.mode = parse_mode(mode);
  CheckResult r;
  {
    py::gil_scoped_release release;
    r = run_check(s);
  }
  return py::make_tuple(static_cast<int>(r.outcome), r.report.dump());
}

std::string flags(const std::string& kspec, std::size_t ambient_dim, bool minimal_only) {
  return enumerate_flags_json(kspec_from_json(parse_or_input_error(kspec), ambient_dim), minimal_only).dump();
}

py::tuple verify(const std::string& certificate) {
  const VerifyResult r = run_verify(parse_or_input_error(certificate));
  return py::make_tuple(r.accepted, r.report.dump());
}

std::string corpus(const std::string& dir, const std::string& filter, const std::string& fixture) {
  return run_corpus(dir.empty() ? default_corpus_dir() : dir, filter,
                    fixture.empty() ? default_g2_fixture() : fixture)
      .to_json()
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def("check", &check, py::arg("scenario"), py::arg("mode") = "");
  m.def("flags", &flags, py::arg("kspec"), py::arg("ambient_dim"), py::arg("minimal_only") = false);
  m.def("verify", &verify, py::arg("certificate"));
  m.def("corpus", &corpus, py::arg("dir") = "", py::arg("filter") = "", py::arg("g2_fixture") = "");
  m.def("g2_fixture", [] { return g2_fixture_to_json(build_g2_data()).dump(); });
  m.def("parse_rational", [](const std::string& s) { return to_string(parse_rational(s)); });
}
