#pragma once

#include "relcr/certificate.hpp"
#include "relcr/json_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace relcr {

enum class Mode { definition, minimal, levi, crosscheck, automatic };
std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct ScenarioOptions {
  std::size_t pool_cap = kDefaultPoolCap;
  std::size_t elim_cap = kDefaultElimCap;
  std::vector<Vector> seeds;
};

struct Scenario {
  std::string name;
  std::size_t ambient_dim = 0;
  GroupH h;
  KSpec k;
  Mode mode = Mode::automatic;
  ScenarioOptions options;
};

// {"generators": [...]} | {"flag_stabilizer": [...]} | {"decomposition_stabilizer": [...]}
GroupH group_from_json(const json& j, std::size_t ambient_dim);
// {"kind": "torus"|"glu"|"classical"|"g2", ...}
KSpec kspec_from_json(const json& j, std::size_t ambient_dim);
Scenario scenario_from_json(const json& j);

enum class Outcome { relcr = 0, not_relcr = 1, inconclusive = 2 };

struct CheckResult {
  Outcome outcome = Outcome::relcr;
  json report;
};

CheckResult run_check(const Scenario& s);

// F_K (or MF_K) for torus and G2 K.
json enumerate_flags_json(const KSpec& k, bool minimal_only);

struct VerifyResult {
  bool accepted = false;
  json report;
};

// {"ambient_dim", "H", "K", "claims": [{"flag": [...], "opposite": [...]}]}
VerifyResult run_verify(const json& certificate);

struct CorpusItemResult {
  std::string file;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CorpusSummary {
  std::vector<CorpusItemResult> items;
  bool all_passed() const;
  json to_json() const;
};

// Runs every item of every *.json file in dir whose name contains filter
// or whose tags include it (empty filter runs everything).
CorpusSummary run_corpus(const std::string& dir, const std::string& filter, const std::string& g2_fixture_path);

std::string default_corpus_dir();
std::string default_g2_fixture();

}  // namespace relcr
