#include "relcr/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kExitInput = 3;
constexpr int kExitInternal = 4;

struct Globals {
  int indent = 2;
  std::string mode;
  std::optional<std::size_t> pool_cap;
  std::optional<std::size_t> elim_cap;
  std::string seeds_file;
};

void emit(const relcr::json& j, int indent) { std::cout << j.dump(indent < 0 ? -1 : indent) << '\n'; }

int cmd_check(const std::string& path, const Globals& g) {
  auto s = relcr::scenario_from_json(relcr::parse_json_file(path));
  if (!g.mode.empty()) s.mode = relcr::parse_mode(g.mode);
  if (g.pool_cap) s.options.pool_cap = *g.pool_cap;
  if (g.elim_cap) s.options.elim_cap = *g.elim_cap;
  if (!g.seeds_file.empty())
    s.options.seeds = relcr::seeds_from_json(relcr::parse_json_file(g.seeds_file), s.ambient_dim);
  const auto r = relcr::run_check(s);
  emit(r.report, g.indent);
  return static_cast<int>(r.outcome);
}

int cmd_flags(const std::string& path, bool minimal, const Globals& g) {
  const auto j = relcr::parse_json_file(path);
  // Accepts either a bare K spec with ambient_dim or a full scenario.
  const relcr::json& kj = j.contains("K") ? j.at("K") : j;
  std::size_t n = 0;
  if (j.contains("ambient_dim")) n = j.at("ambient_dim").get<std::size_t>();
  else if (kj.value("kind", "") == "g2") n = 7;
  if (n == 0) throw relcr::InputError("flags input needs an ambient_dim");
  emit(relcr::enumerate_flags_json(relcr::kspec_from_json(kj, n), minimal), g.indent);
  return 0;
}

int cmd_verify(const std::string& path, const Globals& g) {
  const auto r = relcr::run_verify(relcr::parse_json_file(path));
  emit(r.report, g.indent);
  return r.accepted ? 0 : 1;
}

int cmd_corpus(const std::string& dir, const std::string& filter, const std::string& fixture, const Globals& g) {
  const auto summary = relcr::run_corpus(dir, filter, fixture);
  emit(summary.to_json(), g.indent);
  return summary.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative complete reducibility checker"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--json-indent", g.indent, "JSON indentation (-1 for compact)")->capture_default_str();

  auto add_tuning = [&](CLI::App* c) {
    c->add_option("--mode", g.mode, "definition | minimal | levi | crosscheck | auto");
    c->add_option("--pool-cap", g.pool_cap, "subspace pool size cap");
    c->add_option("--elim-cap", g.elim_cap, "largest parameter count handed to elimination");
    c->add_option("--seeds", g.seeds_file, "JSON file with extra seed vectors")->check(CLI::ExistingFile);
  };

  std::string scenario_path;
  auto* check = app.add_subcommand("check", "decide a scenario");
  check->add_option("scenario", scenario_path, "scenario JSON file")->required();
  add_tuning(check);

  std::string k_path;
  bool minimal = false;
  auto* flags = app.add_subcommand("flags", "enumerate F_K for a torus or G2 K");
  flags->add_option("kspec", k_path, "K spec or scenario JSON file")->required();
  flags->add_flag("--minimal", minimal, "only minimal flags");

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "verify a certificate");
  verify->add_option("certificate", cert_path, "certificate JSON file")->required();

  std::string dir = relcr::default_corpus_dir();
  std::string filter;
  std::string fixture = relcr::default_g2_fixture();
  auto* corpus = app.add_subcommand("corpus", "run the golden corpus");
  corpus->add_option("--dir", dir, "corpus directory")->capture_default_str();
  corpus->add_option("--filter", filter, "run items whose name contains or whose tags include this");
  corpus->add_option("--g2-fixture", fixture, "stored G2 fixture")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*check) return cmd_check(scenario_path, g);
    if (*flags) return cmd_flags(k_path, minimal, g);
    if (*verify) return cmd_verify(cert_path, g);
    if (*corpus) return cmd_corpus(dir, filter, fixture, g);
  } catch (const relcr::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const relcr::ClassBoundExceeded& e) {
    std::cerr << "input too large: " << e.what() << '\n';
    return kExitInput;
  } catch (const relcr::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
