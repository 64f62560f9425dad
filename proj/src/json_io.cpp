#include "relcr/json_io.hpp"

#include <fstream>
#include <sstream>

namespace relcr {

json to_json(const Rational& q) { return to_string(q); }

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

json to_json(const Subspace& s) { return to_json(s.basis()); }

json to_json(const Flag& f) {
  json chain = json::array();
  for (const auto& s : f.chain()) chain.push_back(to_json(s));
  return {{"ambient_dim", f.ambient_dim()}, {"chain", chain}, {"dims", f.dimensions()}};
}

json to_json(const TorusK& k) { return {{"ambient_dim", k.ambient_dim()}, {"lattice_basis", k.lattice_basis()}}; }

json to_json(const BilinForm& b) { return {{"kind", form_kind_name(b.kind())}, {"gram", to_json(b.gram())}}; }

json to_json(const GLUSplit& s) { return {{"U", to_json(s.u())}, {"Utilde", to_json(s.utilde())}}; }

json to_json(const UPoly& p) { return to_json(Vector(p.coeffs())); }

json to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponents", e}, {"coeff", to_string(c)}});
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

json to_json(const AffineSolution& a) {
  return {{"particular", to_json(a.particular)}, {"homogeneous", to_json(a.homogeneous)}, {"dimension", a.dimension()}};
}

json to_json(const SolveOutcome& s) {
  static const char* names[] = {"empty", "found", "unknown"};
  json out{{"status", names[static_cast<int>(s.status)]}, {"reason", s.reason}};
  if (s.status == SolveOutcome::Status::found) out["point"] = to_json(s.point);
  json elim = json::array();
  for (const auto& u : s.eliminants) elim.push_back(to_json(u));
  out["eliminants"] = elim;
  return out;
}

json to_json(const SubspacePool& pool) {
  json members = json::array();
  for (const auto& m : pool.members())
    members.push_back({{"basis", to_json(m.space)}, {"dim", m.space.dim()}, {"origin", provenance_name(m.origin)}});
  return {{"closed", pool.closed()}, {"size", pool.size()}, {"members", members}};
}

Rational rational_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad rational: ") + e.what());
  }
  throw InputError("rational must be a string \"p/q\" or an integer, got " + j.dump());
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("vector must be an array");
  Vector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Matrix matrix_from_json(const json& j, std::size_t cols) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw InputError("matrix rows have different lengths");
  }
  if (cols != 0 && !rows.empty() && rows.front().size() != cols)
    throw InputError("matrix has " + std::to_string(rows.front().size()) + " columns, expected " + std::to_string(cols));
  return Matrix::from_rows(rows, cols);
}

Subspace subspace_from_json(const json& j, std::size_t ambient_dim) {
  return Subspace::span(ambient_dim, matrix_from_json(j, ambient_dim));
}

Flag flag_from_json(const json& j, std::size_t ambient_dim) {
  const json* chain = &j;
  if (j.is_object()) {
    if (!j.contains("chain")) throw InputError("flag object needs a \"chain\"");
    if (j.contains("ambient_dim")) ambient_dim = j.at("ambient_dim").get<std::size_t>();
    chain = &j.at("chain");
  }
  if (ambient_dim == 0) throw InputError("flag needs an ambient dimension");
  if (!chain->is_array()) throw InputError("flag chain must be an array");
  std::vector<Subspace> members;
  for (const auto& m : *chain) members.push_back(subspace_from_json(m, ambient_dim));
  try {
    return Flag(ambient_dim, std::move(members));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

TorusK torus_from_json(const json& j) {
  try {
    const auto n = j.at("ambient_dim").get<std::size_t>();
    const auto basis = j.at("lattice_basis").get<std::vector<Weights>>();
    return TorusK(n, basis);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad torus: ") + e.what());
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad torus: ") + e.what());
  }
}

BilinForm form_from_json(const json& j) {
  if (!j.contains("kind") || !j.contains("gram")) throw InputError("form needs \"kind\" and \"gram\"");
  const auto kind = j.at("kind").get<std::string>();
  FormKind fk;
  if (kind == "symplectic") {
    fk = FormKind::symplectic;
  } else if (kind == "orthogonal") {
    fk = FormKind::orthogonal;
  } else {
    throw InputError("form kind must be symplectic or orthogonal");
  }
  try {
    return BilinForm(fk, matrix_from_json(j.at("gram")));
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

GLUSplit glu_from_json(const json& j, std::size_t ambient_dim) {
  if (!j.contains("U") || !j.contains("Utilde")) throw InputError("glu K needs \"U\" and \"Utilde\"");
  try {
    return GLUSplit(subspace_from_json(j.at("U"), ambient_dim), subspace_from_json(j.at("Utilde"), ambient_dim));
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

std::vector<Vector> seeds_from_json(const json& j, std::size_t ambient_dim) {
  if (!j.is_array()) throw InputError("seeds must be an array of vectors");
  std::vector<Vector> out;
  for (const auto& v : j) {
    out.push_back(vector_from_json(v));
    if (out.back().size() != ambient_dim) throw InputError("seed vector has wrong length");
  }
  return out;
}

json flag_type_to_json(const FlagType& ft, const WeightClasses& classes) {
  json blocks = json::array();
  std::vector<std::size_t> dims;
  std::size_t total = 0;
  for (const auto& blk : ft.blocks) {
    std::vector<std::size_t> coords;
    for (auto c : blk)
      for (auto i : classes.classes[c]) coords.push_back(i + 1);
    std::sort(coords.begin(), coords.end());
    total += coords.size();
    blocks.push_back(coords);
    dims.push_back(total);
  }
  if (!dims.empty()) dims.pop_back();
  return {{"blocks", blocks}, {"dims", dims}};
}

json typed_flag_to_json(const TypedFlag& t, const TorusFlagCatalog& catalog) {
  json out = flag_type_to_json(t.type, catalog.classes());
  out["cocharacter"] = t.witness.coefficients;
  out["weights"] = catalog.torus().cocharacter_weights(t.witness.coefficients);
  return out;
}

json to_json(const TorusVerdict& v, const TorusFlagCatalog& catalog) {
  json out{{"verdict", v.relcr ? "relcr" : "not_relcr"}, {"method", method_name(v.method)}};
  json witness = nullptr;
  if (v.witness) {
    witness = typed_flag_to_json(*v.witness, catalog);
    witness["violated_condition"] = v.violated_condition;
  }
  out["witness"] = witness;
  return out;
}

json to_json(const CrosscheckReport& r, const TorusFlagCatalog& catalog) {
  return {{"verdict", r.relcr ? "relcr" : "not_relcr"},
          {"agreement", true},
          {"methods",
           {{"definition", to_json(r.definition, catalog)},
            {"minimal", to_json(r.minimal, catalog)},
            {"levi", to_json(r.levi, catalog)}}}};
}

json to_json(const TriVerdict& v) {
  json out{{"verdict", tri_value_name(v.value)},
           {"pool_closed", v.pool_closed},
           {"pool_relative", true},
           {"candidates", v.candidates}};
  json witnesses = json::array();
  for (const auto& p : v.witnesses) witnesses.push_back({{"flag", to_json(p.flag)}, {"opposite", to_json(p.opposite)}});
  out["witnesses"] = witnesses;
  if (v.refutation) {
    const auto& r = *v.refutation;
    json lin = json::array();
    for (const auto& l : r.linear)
      lin.push_back({{"side", l.side},
                     {"equations", to_json(l.equations)},
                     {"rhs", to_json(l.rhs)},
                     {"certificate", to_json(l.certificate)}});
    json ref{{"flag", to_json(r.flag)}, {"linear", lin}, {"rechecked", recheck_refutation(r)}};
    const auto disc = discriminant_recheck(r);
    ref["discriminant_recheck"] = disc ? json(*disc) : json(nullptr);
    if (r.polynomial) {
      json eqs = json::array();
      for (const auto& p : r.polynomial->equations) eqs.push_back(to_json(p));
      json dc = nullptr;
      if (r.polynomial->discriminant_confirms) dc = *r.polynomial->discriminant_confirms;
      ref["polynomial"] = {{"family", to_json(r.polynomial->family)},
                           {"equations", eqs},
                           {"outcome", to_json(r.polynomial->outcome)},
                           {"discriminant_confirms", dc}};
    }
    out["refutation"] = ref;
  }
  if (v.value == TriValue::inconclusive) {
    out["inconclusive_reason"] = v.inconclusive_reason;
    if (v.open_family) out["open_family"] = to_json(*v.open_family);
  }
  return out;
}

json g2_fixture_to_json(const G2Data& d) {
  json triples = json::array();
  for (const auto& [i, j, k, value] : d.sparse_triples()) triples.push_back({i + 1, j + 1, k + 1, to_string(value)});
  return {{"basis",
           {"v1", "w2", "w3", "(1,0,0,-1)", "v3", "v2", "w1"}},
          {"trilinear", triples},
          {"gram", to_json(d.bilinear.gram())},
          {"torus", to_json(d.torus)}};
}

G2Data g2_fixture_from_json(const json& j) {
  try {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>> triples;
    for (const auto& t : j.at("trilinear")) {
      if (!t.is_array() || t.size() != 4) throw InputError("trilinear entries are [i, j, k, value]");
      const auto i = t[0].get<std::size_t>();
      const auto jj = t[1].get<std::size_t>();
      const auto k = t[2].get<std::size_t>();
      if (i == 0 || jj == 0 || k == 0) throw InputError("trilinear indices are 1-based");
      triples.emplace_back(i - 1, jj - 1, k - 1, rational_from_json(t[3]));
    }
    const TorusK torus = torus_from_json(j.at("torus"));
    return g2_from_constants(triples, matrix_from_json(j.at("gram"), 7), torus.lattice_basis());
  } catch (const json::exception& e) {
    throw InputError(std::string("bad G2 fixture: ") + e.what());
  }
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace relcr
