#include "relcr/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

namespace relcr {

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::definition: return "definition";
    case Mode::minimal: return "minimal";
    case Mode::levi: return "levi";
    case Mode::crosscheck: return "crosscheck";
    case Mode::automatic: return "auto";
  }
  return "auto";
}

Mode parse_mode(const std::string& s) {
  if (s == "definition") return Mode::definition;
  if (s == "minimal") return Mode::minimal;
  if (s == "levi") return Mode::levi;
  if (s == "crosscheck") return Mode::crosscheck;
  if (s == "auto") return Mode::automatic;
  throw InputError("unknown mode \"" + s + "\"");
}

namespace {

std::vector<Subspace> subspaces_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("expected an array of bases");
  std::vector<Subspace> out;
  for (const auto& m : j) out.push_back(subspace_from_json(m, n));
  return out;
}

template <class F>
auto rethrow_as_input(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const json::exception& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace

GroupH group_from_json(const json& j, std::size_t n) {
  return rethrow_as_input([&] {
    if (!j.is_object()) throw InputError("H must be an object");
    if (j.contains("generators")) {
      std::vector<Matrix> gens;
      for (const auto& m : j.at("generators")) {
        gens.push_back(matrix_from_json(m, n));
        if (gens.back().rows() != n) throw InputError("generator must be square of the ambient dimension");
      }
      return GroupH(n, std::move(gens));
    }
    if (j.contains("flag_stabilizer")) return flag_stabilizer(Flag(n, subspaces_from_json(j.at("flag_stabilizer"), n)));
    if (j.contains("decomposition_stabilizer"))
      return decomposition_stabilizer(GradedDecomposition(n, subspaces_from_json(j.at("decomposition_stabilizer"), n)));
    throw InputError("H needs generators, flag_stabilizer or decomposition_stabilizer");
  });
}

KSpec kspec_from_json(const json& j, std::size_t n) {
  return rethrow_as_input([&] {
    if (!j.is_object() || !j.contains("kind")) throw InputError("K needs a \"kind\"");
    const auto kind = j.at("kind").get<std::string>();
    KSpec k;
    if (kind == "torus") {
      k.kind = KKind::torus;
      json t = j;
      if (!t.contains("ambient_dim")) t["ambient_dim"] = n;
      k.torus = torus_from_json(t);
    } else if (kind == "glu") {
      k.kind = KKind::glu;
      k.glu = glu_from_json(j, n);
    } else if (kind == "classical") {
      k.kind = KKind::classical;
      if (j.contains("form")) {
        k.form = form_from_json(j.at("form"));
      } else if (j.contains("standard")) {
        const auto fk = j.at("standard").get<std::string>();
        if (fk != "symplectic" && fk != "orthogonal") throw InputError("standard form must be symplectic or orthogonal");
        k.form = BilinForm::standard(fk == "symplectic" ? FormKind::symplectic : FormKind::orthogonal, n);
      } else {
        throw InputError("classical K needs \"form\" or \"standard\"");
      }
    } else if (kind == "g2") {
      k.kind = KKind::g2;
      k.g2 = j.contains("fixture") ? g2_fixture_from_json(parse_json_file(j.at("fixture").get<std::string>()))
                                   : build_g2_data();
    } else {
      throw InputError("unknown K kind \"" + kind + "\"");
    }
    if (k.ambient_dim() != n) throw InputError("K does not act on the ambient dimension");
    return k;
  });
}

Scenario scenario_from_json(const json& j) {
  return rethrow_as_input([&] {
    Scenario s;
    if (!j.is_object()) throw InputError("scenario must be an object");
    s.name = j.value("name", "");
    s.ambient_dim = j.at("ambient_dim").get<std::size_t>();
    if (s.ambient_dim == 0) throw InputError("ambient_dim must be positive");
    s.h = group_from_json(j.at("H"), s.ambient_dim);
    s.k = kspec_from_json(j.at("K"), s.ambient_dim);
    if (j.contains("mode")) s.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("options")) {
      const auto& o = j.at("options");
      if (o.contains("pool_cap")) s.options.pool_cap = o.at("pool_cap").get<std::size_t>();
      if (o.contains("elim_cap")) s.options.elim_cap = o.at("elim_cap").get<std::size_t>();
      if (o.contains("seeds")) s.options.seeds = seeds_from_json(o.at("seeds"), s.ambient_dim);
    }
    return s;
  });
}

namespace {

json pool_summary(const SubspacePool& pool) { return {{"size", pool.size()}, {"closed", pool.closed()}}; }

Outcome tri_outcome(TriValue v) {
  switch (v) {
    case TriValue::relcr_witnessed: return Outcome::relcr;
    case TriValue::not_relcr_witnessed: return Outcome::not_relcr;
    case TriValue::inconclusive: return Outcome::inconclusive;
  }
  return Outcome::inconclusive;
}

}  // namespace

CheckResult run_check(const Scenario& s) {
  CheckResult out;
  json report{{"ambient_dim", s.ambient_dim}, {"k_kind", k_kind_name(s.k.kind)}, {"mode", mode_name(s.mode)}};
  if (!s.name.empty()) report["name"] = s.name;
  if (s.k.kind == KKind::torus) {
    const TorusFlagCatalog catalog(*s.k.torus);
    report["flag_types"] = std::count_if(catalog.all().begin(), catalog.all().end(),
                                        [](const TypedFlag& t) { return t.type.blocks.size() >= 2; });
    report["minimal_flag_types"] = catalog.minimal().size();
    bool relcr = true;
    switch (s.mode) {
      case Mode::automatic:
      case Mode::crosscheck: {
        const auto r = relcr_torus_crosscheck(s.h, catalog);
        relcr = r.relcr;
        report["result"] = to_json(r, catalog);
        break;
      }
      case Mode::definition:
      case Mode::minimal:
      case Mode::levi: {
        const auto v = s.mode == Mode::definition ? relcr_torus_definition(s.h, catalog)
                       : s.mode == Mode::minimal  ? relcr_torus_minimal(s.h, catalog)
                                                  : relcr_torus_levi(s.h, catalog);
        relcr = v.relcr;
        report["result"] = to_json(v, catalog);
        break;
      }
    }
    report["verdict"] = relcr ? "relcr" : "not_relcr";
    out.outcome = relcr ? Outcome::relcr : Outcome::not_relcr;
    out.report = std::move(report);
    return out;
  }
  if (s.mode != Mode::automatic)
    throw InputError("mode " + mode_name(s.mode) + " is only available for torus K; use auto");
  TriVerdict v;
  SubspacePool pool;
  switch (s.k.kind) {
    case KKind::glu:
      pool = build_pool(s.h, {}, s.options.seeds, s.options.pool_cap);
      v = relcr_glu(s.h, *s.k.glu, pool);
      break;
    case KKind::classical:
      pool = build_pool(s.h, form_adjoints(s.h.generators(), *s.k.form), s.options.seeds, s.options.pool_cap);
      v = relcr_classical(s.h, *s.k.form, pool, s.options.elim_cap);
      break;
    case KKind::g2:
      pool = build_g2_pool(s.h, *s.k.g2, s.options.seeds, s.options.pool_cap);
      v = relcr_g2(s.h, *s.k.g2, pool, s.options.elim_cap);
      break;
    case KKind::torus:
      break;
  }
  report["pool"] = pool_summary(pool);
  report["result"] = to_json(v);
  report["verdict"] = tri_value_name(v.value);
  out.outcome = tri_outcome(v.value);
  out.report = std::move(report);
  return out;
}

json enumerate_flags_json(const KSpec& k, bool minimal_only) {
  TorusK torus;
  if (k.kind == KKind::torus) {
    torus = *k.torus;
  } else if (k.kind == KKind::g2) {
    torus = k.g2->torus;
  } else {
    throw InputError("flag enumeration needs a torus or g2 K");
  }
  const TorusFlagCatalog catalog(torus);
  const auto& list = minimal_only ? catalog.minimal() : catalog.all();
  json types = json::array();
  std::set<std::vector<std::size_t>> patterns;
  std::size_t count = 0;
  for (const auto& t : list) {
    if (t.type.blocks.size() < 2) continue;
    ++count;
    types.push_back(typed_flag_to_json(t, catalog));
    patterns.insert(catalog.flag(t.type).dimensions());
  }
  json classes = json::array();
  for (const auto& c : catalog.classes().classes) {
    std::vector<std::size_t> one_based;
    for (auto i : c) one_based.push_back(i + 1);
    classes.push_back(one_based);
  }
  json pats = json::array();
  for (const auto& p : patterns) pats.push_back(p);
  return {{"k_kind", k_kind_name(k.kind)},
          {"ambient_dim", torus.ambient_dim()},
          {"minimal_only", minimal_only},
          {"weight_classes", classes},
          {"count", count},
          {"patterns", pats},
          {"types", types}};
}

VerifyResult run_verify(const json& c) {
  return rethrow_as_input([&] {
    const auto n = c.at("ambient_dim").get<std::size_t>();
    const GroupH h = group_from_json(c.at("H"), n);
    const KSpec k = kspec_from_json(c.at("K"), n);
    std::vector<OppositePair> claims;
    for (const auto& cl : c.value("claims", json::array()))
      claims.push_back({flag_from_json(cl.at("flag"), n), flag_from_json(cl.at("opposite"), n)});
    const auto rep = verify_certificate(h, claims, k);
    json checks = json::array();
    for (const auto& ch : rep.claims)
      checks.push_back({{"flag_in_family", ch.flag_in_family},
                        {"flag_stable", ch.flag_stable},
                        {"opposite_in_family", ch.opposite_in_family},
                        {"opposite_stable", ch.opposite_stable},
                        {"opposite", ch.opposite},
                        {"ok", ch.ok()}});
    json report{{"accepted", rep.accepted}, {"k_kind", k_kind_name(k.kind)}, {"claims", checks}};
    if (rep.covers_minimal) {
      json missing = json::array();
      for (const auto& f : rep.uncovered) missing.push_back(to_json(f));
      report["covers_minimal"] = *rep.covers_minimal;
      report["uncovered"] = missing;
    }
    return VerifyResult{rep.accepted, report};
  });
}

bool CorpusSummary::all_passed() const {
  return std::all_of(items.begin(), items.end(), [](const CorpusItemResult& r) { return r.passed; });
}

json CorpusSummary::to_json() const {
  json list = json::array();
  std::size_t passed = 0;
  for (const auto& r : items) {
    list.push_back({{"file", r.file}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    if (r.passed) ++passed;
  }
  return {{"total", items.size()}, {"passed", passed}, {"all_passed", all_passed()}, {"items", list}};
}

namespace {

std::string verdict_string(const json& report) { return report.at("verdict").get<std::string>(); }

// Returns an empty string on success, otherwise a description of the mismatch.
std::string run_item(const json& item, const std::string& g2_fixture_path) {
  const auto command = item.at("command").get<std::string>();
  const json& expect = item.at("expect");
  if (command == "check") {
    const auto s = scenario_from_json(item.at("scenario"));
    const auto r = run_check(s);
    const auto got = verdict_string(r.report);
    if (expect.contains("verdict") && got != expect.at("verdict").get<std::string>())
      return "verdict " + got + ", expected " + expect.at("verdict").get<std::string>();
    if (expect.contains("exit") && static_cast<int>(r.outcome) != expect.at("exit").get<int>())
      return "exit code " + std::to_string(static_cast<int>(r.outcome));
    if (expect.contains("witness_dims")) {
      const auto& res = r.report.at("result");
      const json& w = res.contains("methods") ? res.at("methods").at("definition").at("witness") : res.at("witness");
      if (w.is_null() || w.at("dims") != expect.at("witness_dims")) return "witness dims " + w.dump();
    }
    if (expect.contains("witness_count") &&
        r.report.at("result").at("witnesses").size() != expect.at("witness_count").get<std::size_t>())
      return "witness count " + std::to_string(r.report.at("result").at("witnesses").size());
    if (expect.contains("rechecked")) {
      const auto& ref = r.report.at("result").at("refutation");
      if (ref.at("rechecked") != expect.at("rechecked")) return "refutation recheck mismatch";
    }
    if (expect.contains("discriminant_recheck")) {
      const auto& ref = r.report.at("result").at("refutation");
      if (ref.at("discriminant_recheck") != expect.at("discriminant_recheck")) return "discriminant recheck mismatch";
    }
    if (expect.contains("opposite_dims")) {
      bool found = false;
      for (const auto& w : r.report.at("result").at("witnesses")) {
        if (w.at("opposite").at("dims") == expect.at("opposite_dims") &&
            (!expect.contains("opposite_chain") ||
             w.at("opposite").at("chain") == expect.at("opposite_chain")))
          found = true;
      }
      if (!found) return "expected opposite witness not found";
    }
    return "";
  }
  if (command == "flags") {
    const auto n = item.at("ambient_dim").get<std::size_t>();
    const auto k = kspec_from_json(item.at("K"), n);
    const auto r = enumerate_flags_json(k, item.value("minimal", false));
    if (expect.contains("patterns") && r.at("patterns") != expect.at("patterns"))
      return "patterns " + r.at("patterns").dump();
    if (expect.contains("count") && r.at("count") != expect.at("count")) return "count " + r.at("count").dump();
    return "";
  }
  if (command == "verify") {
    const auto r = run_verify(item.at("certificate"));
    if (r.accepted != expect.at("accepted").get<bool>()) return "accepted = " + std::string(r.accepted ? "true" : "false");
    return "";
  }
  if (command == "complements") {
    const auto n = item.at("ambient_dim").get<std::size_t>();
    const GroupH h = group_from_json(item.at("H"), n);
    const Subspace u = subspace_from_json(item.at("u"), n);
    std::optional<Subspace> inside, containing;
    if (item.contains("inside")) inside = subspace_from_json(item.at("inside"), n);
    if (item.contains("containing")) containing = subspace_from_json(item.at("containing"), n);
    const auto fam = stable_complements(u, h, inside, containing);
    if (expect.contains("empty") && fam.empty() != expect.at("empty").get<bool>())
      return fam.empty() ? "family is empty" : "family is not empty";
    if (expect.contains("dimension") && (fam.empty() || fam.dimension() != expect.at("dimension").get<std::size_t>()))
      return "family dimension mismatch";
    return "";
  }
  if (command == "product") {
    const auto n = item.at("ambient_dim").get<std::size_t>();
    const GroupH h = group_from_json(item.at("H"), n);
    const KSpec k = kspec_from_json(item.at("K"), n);
    if (k.kind != KKind::torus) throw InputError("product items need a torus K");
    std::vector<TorusFactor> factors;
    for (const auto& blk : item.at("blocks")) {
      std::vector<std::size_t> b;
      for (const auto& c : blk) b.push_back(c.get<std::size_t>() - 1);
      factors.push_back(project_torus(*k.torus, b));
    }
    const auto rep = relcr_torus_product(h, factors, *k.torus);
    auto name = [](bool b) { return std::string(b ? "relcr" : "not_relcr"); };
    if (name(rep.combined.relcr) != expect.at("combined").get<std::string>()) return "combined " + name(rep.combined.relcr);
    const auto& fx = expect.at("factors");
    for (std::size_t i = 0; i < rep.factors.size(); ++i) {
      if (!fx.at(i).is_null() && name(rep.factors[i].relcr) != fx.at(i).get<std::string>())
        return "factor " + std::to_string(i + 1) + " " + name(rep.factors[i].relcr);
    }
    return "";
  }
  if (command == "g2_fixture") {
    const json stored = parse_json_file(g2_fixture_path);
    const G2Data regenerated = build_g2_data();
    const bool matches = stored == g2_fixture_to_json(regenerated);
    const bool invariants = check_g2_invariants(g2_fixture_from_json(stored)).ok();
    if (expect.contains("matches") && matches != expect.at("matches").get<bool>()) return "fixture differs from regenerated model";
    if (expect.contains("invariants") && invariants != expect.at("invariants").get<bool>()) return "fixture invariants";
    return "";
  }
  throw InputError("unknown corpus command \"" + command + "\"");
}

bool item_selected(const json& item, const std::string& filter) {
  if (filter.empty()) return true;
  if (item.value("name", "").find(filter) != std::string::npos) return true;
  for (const auto& t : item.value("tags", json::array())) {
    if (t.get<std::string>() == filter) return true;
  }
  return false;
}

}  // namespace

CorpusSummary run_corpus(const std::string& dir, const std::string& filter, const std::string& g2_fixture_path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("corpus directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  CorpusSummary summary;
  for (const auto& f : files) {
    const json doc = parse_json_file(f.string());
    for (const auto& item : doc.at("items")) {
      if (!item_selected(item, filter)) continue;
      CorpusItemResult r;
      r.file = f.filename().string();
      r.name = item.value("name", "");
      try {
        r.detail = run_item(item, g2_fixture_path);
        r.passed = r.detail.empty();
      } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
      }
      summary.items.push_back(std::move(r));
    }
  }
  return summary;
}

std::string default_corpus_dir() { return RELCR_DEFAULT_CORPUS_DIR; }
std::string default_g2_fixture() { return RELCR_DEFAULT_G2_FIXTURE; }

}  // namespace relcr
