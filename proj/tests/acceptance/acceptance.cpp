#include "relcr/certificate.hpp"
#include "relcr/scenario.hpp"
#include "support/random_instances.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace relcr;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

Subspace coord(std::size_t n, std::vector<std::size_t> one_based) {
  for (auto& i : one_based) --i;
  return Subspace::coordinate(n, one_based);
}

const TorusK kPairedTorus(4, {{1, 0, 0, -1}, {0, 1, -1, 0}});

// Instances shared by AC1 and AC5.
struct Instance {
  TorusK k;
  GroupH h;
};

std::vector<Instance> random_instances(std::size_t count) {
  std::mt19937_64 rng(20240601);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 2 + i % 4;
    out.push_back({testing::random_torus(rng, n), testing::random_group(rng, n)});
  }
  return out;
}

Result ac1(const std::vector<Instance>& suite) {
  std::size_t disagreements = 0, not_relcr = 0;
  for (const auto& in : suite) {
    const TorusFlagCatalog cat(in.k);
    const bool d = relcr_torus_definition(in.h, cat).relcr;
    const bool m = relcr_torus_minimal(in.h, cat).relcr;
    const bool l = relcr_torus_levi(in.h, cat).relcr;
    if (d != m || m != l) ++disagreements;
    if (!d) ++not_relcr;
  }
  std::ostringstream s;
  s << suite.size() << " instances, " << not_relcr << " NotRelCR, " << disagreements << " disagreements";
  return {suite.size() >= 200 && disagreements == 0, s.str()};
}

Result ac2() {
  const TorusFlagCatalog cat(kPairedTorus);
  std::set<std::vector<std::size_t>> patterns;
  for (const auto& t : cat.all()) {
    if (t.type.is_trivial()) continue;
    auto dims = cat.flag(t.type).dimensions();
    dims.push_back(4);
    patterns.insert(dims);
  }
  const std::set<std::vector<std::size_t>> expected{{2, 4}, {1, 3, 4}, {1, 2, 3, 4}};
  std::set<std::size_t> lengths;
  for (const auto& t : cat.minimal()) lengths.insert(cat.flag(t.type).length());
  const GroupH h = flag_stabilizer(Flag(4, {coord(4, {1, 2, 3})}));
  const bool verdicts = relcr_torus_definition(h, cat).relcr && relcr_torus_minimal(h, cat).relcr &&
                        relcr_torus_levi(h, cat).relcr;
  const bool empty = stable_complements(coord(4, {1, 2, 3}), h).empty();
  std::ostringstream s;
  s << "patterns " << (patterns == expected ? "match" : "differ") << ", MF_K lengths {";
  for (auto l : lengths) s << ' ' << l;
  s << " }, verdicts " << (verdicts ? "RelCR" : "wrong") << ", complements " << (empty ? "Empty" : "nonempty");
  return {patterns == expected && lengths == std::set<std::size_t>{1, 2} && verdicts && empty, s.str()};
}

Result ac3() {
  const auto k1 = project_torus(kPairedTorus, {0, 1});
  const auto k2 = project_torus(kPairedTorus, {2, 3});
  const auto r = relcr_torus_product(flag_stabilizer(Flag(4, {coord(4, {2, 4})})), {k1, k2}, kPairedTorus);
  const auto rt = relcr_torus_product(flag_stabilizer(Flag(4, {coord(4, {1})})), {k1, k2}, kPairedTorus);
  const bool ok = !r.combined.relcr && r.factors[0].relcr && r.factors[1].relcr && !rt.factors[0].relcr &&
                  rt.combined.relcr;
  std::ostringstream s;
  s << "Stab<e2,e4>: K " << (r.combined.relcr ? "RelCR" : "NotRelCR") << ", K1 "
    << (r.factors[0].relcr ? "RelCR" : "NotRelCR") << ", K2 " << (r.factors[1].relcr ? "RelCR" : "NotRelCR")
    << "; Stab<e1>: K1 " << (rt.factors[0].relcr ? "RelCR" : "NotRelCR") << ", K "
    << (rt.combined.relcr ? "RelCR" : "NotRelCR");
  return {ok, s.str()};
}

Result ac4() {
  std::mt19937_64 rng(4747);
  std::size_t violations = 0, count = 0, not_relcr = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + trial % 3;
    const std::size_t split = 1 + trial % (n - 1);
    std::vector<std::size_t> b1, b2;
    for (std::size_t i = 0; i < n; ++i) (i < split ? b1 : b2).push_back(i);
    // Factor tori on each block, extended by zero weights.
    auto factor = [&](const std::vector<std::size_t>& blk) {
      const TorusK small = testing::random_torus(rng, blk.size());
      std::vector<Weights> rows;
      for (const auto& r : small.lattice_basis()) {
        Weights w(n, 0);
        for (std::size_t j = 0; j < blk.size(); ++j) w[blk[j]] = r[j];
        rows.push_back(w);
      }
      return TorusFactor{TorusK(n, rows), blk};
    };
    const auto f1 = factor(b1), f2 = factor(b2);
    const GroupH g1 = testing::random_group(rng, b1.size());
    const GroupH g2 = testing::random_group(rng, b2.size());
    std::vector<Matrix> gens;
    const std::size_t m = std::max(g1.generators().size(), g2.generators().size());
    for (std::size_t i = 0; i < m; ++i) {
      Matrix g = Matrix::identity(n);
      if (i < g1.generators().size())
        for (std::size_t r = 0; r < b1.size(); ++r)
          for (std::size_t c = 0; c < b1.size(); ++c) g(b1[r], b1[c]) = g1.generators()[i](r, c);
      if (i < g2.generators().size())
        for (std::size_t r = 0; r < b2.size(); ++r)
          for (std::size_t c = 0; c < b2.size(); ++c) g(b2[r], b2[c]) = g2.generators()[i](r, c);
      gens.push_back(g);
    }
    const GroupH h(n, gens);
    ++count;
    try {
      const auto rep = relcr_torus_product(h, {f1, f2});
      const bool conj = rep.factors[0].relcr && rep.factors[1].relcr;
      if (!rep.equivalence_asserted || rep.combined.relcr != conj) ++violations;
      if (!rep.combined.relcr) ++not_relcr;
    } catch (const InternalInconsistency&) {
      ++violations;
    }
  }
  std::ostringstream s;
  s << count << " block-diagonal instances, " << not_relcr << " NotRelCR, " << violations << " violations";
  return {count >= 50 && violations == 0, s.str()};
}

Result ac5(const std::vector<Instance>& suite) {
  std::size_t cover_failures = 0, disagreements = 0, catalogs = 0;
  for (const auto& in : suite) {
    const TorusFlagCatalog cat(in.k);
    ++catalogs;
    cover_failures += minimal_cover_failures(cat).size();
    if (relcr_torus_minimal(in.h, cat).relcr != relcr_torus_all_opposites(in.h, cat).relcr) ++disagreements;
  }
  std::ostringstream s;
  s << catalogs << " catalogs, " << cover_failures << " union failures, " << disagreements
    << " disagreements with the all-opposites checker";
  return {cover_failures == 0 && disagreements == 0, s.str()};
}

Result ac6() {
  std::mt19937_64 rng(606);
  std::size_t failures = 0, count = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 6, m = 1 + trial % 3;
    std::vector<Weights> ws(m, Weights(n));
    for (auto& w : ws)
      for (auto& x : w) x = std::uniform_int_distribution<int>(-3, 3)(rng);
    ++count;
    const auto r = common_refinement(ws, false);
    // Coordinates compare by their weight tuples, lexicographically.
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::int64_t> ti, tj;
        for (const auto& w : ws) {
          ti.push_back(w[i]);
          tj.push_back(w[j]);
        }
        if ((r.combined[i] == r.combined[j]) != (ti == tj)) ok = false;
        if ((r.combined[i] < r.combined[j]) != (ti < tj)) ok = false;
      }
    if (!ok) ++failures;
  }
  std::ostringstream s;
  s << count << " families, " << failures << " failures";
  return {count >= 100 && failures == 0, s.str()};
}

// b(x, y) = 0 on the whole subspace.
bool witnesses_check(const TriVerdict& v, const GroupH& h, const BilinForm& b) {
  for (const auto& w : v.witnesses) {
    if (!is_stable(w.flag, h) || !is_stable(w.opposite, h)) return false;
    if (!is_classical_flag(w.flag, b) || !is_classical_flag(w.opposite, b)) return false;
    if (!verify_opposite(w.flag, w.opposite)) return false;
    if (!is_totally_isotropic(w.opposite.chain().front(), b)) return false;
  }
  return true;
}

Matrix transvection(const Vector& v, const BilinForm& b) {
  Matrix t = Matrix::identity(4);
  const Vector gv = b.gram().apply(v);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t(i, j) += v[i] * gv[j];
  return t;
}

Result ac7() {
  const BilinForm b = BilinForm::standard(FormKind::symplectic, 4);
  auto run = [&](const GroupH& h) { return relcr_classical(h, b, build_pool(h, form_adjoints(h.generators(), b), {})); };

  const GroupH irr(4, {transvection(unit_vector(4, 0), b), transvection(unit_vector(4, 3), b),
                       transvection(unit_vector(4, 1), b), transvection(unit_vector(4, 2), b),
                       transvection({Rational(1), Rational(1), Rational(0), Rational(0)}, b)});
  const auto v1 = run(irr);
  const bool ok1 = v1.value == TriValue::relcr_witnessed && v1.witnesses.empty();

  const GroupH par = flag_stabilizer(Flag(4, {coord(4, {1}), coord(4, {1, 2, 3})}));
  const auto v2 = run(par);
  bool ok2 = v2.value == TriValue::not_relcr_witnessed && v2.refutation && is_stable(v2.refutation->flag, par);
  bool rechecked = false, disc = false;
  if (ok2) {
    rechecked = recheck_refutation(*v2.refutation);
    const auto d = discriminant_recheck(*v2.refutation);
    disc = d.has_value() && *d;
  }
  ok2 = ok2 && rechecked && disc;

  const GroupH dg(4, {Matrix::diagonal({Rational(2), Rational(3), Rational(1, 3), Rational(1, 2)})});
  const auto v3 = run(dg);
  const bool ok3 = v3.value == TriValue::relcr_witnessed && !v3.witnesses.empty() && witnesses_check(v3, dg, b);

  std::ostringstream s;
  s << "irreducible " << tri_value_name(v1.value) << ", parabolic " << tri_value_name(v2.value)
    << " (certificate " << (rechecked ? "ok" : "bad") << ", discriminant " << (disc ? "ok" : "bad") << "), diagonal "
    << tri_value_name(v3.value) << " with " << v3.witnesses.size() << " verified witnesses";
  return {ok1 && ok2 && ok3, s.str()};
}

Result ac8() {
  const G2Data d = build_g2_data();
  const TorusFlagCatalog cat(d.torus);
  std::set<std::vector<std::size_t>> patterns;
  for (const auto& t : cat.all())
    if (!t.type.is_trivial()) patterns.insert(cat.flag(t.type).dimensions());
  const std::set<std::vector<std::size_t>> expected{{2, 5}, {1, 3, 4, 6}, {1, 2, 3, 4, 5, 6}};

  bool deltas = true;
  for (std::size_t i = 0; i < 7; ++i) {
    const auto u = Subspace::coordinate(7, {i});
    if (!is_doubly_singular(u, d)) continue;
    if (delta(u, d).dim() != 3) deltas = false;
  }

  const GroupH h = decomposition_stabilizer(
      GradedDecomposition(7, {coord(7, {1, 2}), coord(7, {3, 4, 5}), coord(7, {6, 7})}));
  const auto v = relcr_g2(h, d, build_g2_pool(h, d));
  const Flag target = g2_minimal_flag(coord(7, {6, 7}), d);
  bool coordinate_opposite = false;
  for (const auto& w : v.witnesses)
    if (w.opposite == target && verify_opposite(w.flag, w.opposite)) coordinate_opposite = true;

  const auto inv = check_g2_invariants(d);
  const bool forms = inv.trilinear_torus_invariant && inv.bilinear_torus_invariant && inv.alternating;
  const bool fixture = parse_json_file(default_g2_fixture()) == g2_fixture_to_json(d);

  std::ostringstream s;
  s << "patterns " << (patterns == expected ? "match" : "differ") << ", dim delta = 3 " << (deltas ? "always" : "violated")
    << ", GL2xGL3xGL2 " << tri_value_name(v.value) << (coordinate_opposite ? " via <e6,e7>" : " without coordinate opposite")
    << ", forms " << (forms ? "torus-invariant" : "not invariant") << ", fixture " << (fixture ? "matches" : "differs");
  return {patterns == expected && deltas && v.value == TriValue::relcr_witnessed && coordinate_opposite && forms && fixture,
          s.str()};
}

std::string run_capture(const std::string& cmd, int& code) {
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Result ac9() {
  const std::vector<std::string> scenarios{"paired_torus_hyperplane_stabilizer", "plane_stabilizer_counterexample", "symplectic_parabolic",
                                           "symplectic_diagonal", "glu_jordan_block", "g2_levi_gl2_gl3_gl2"};
  std::size_t mismatches = 0, runs = 0;
  for (const auto& name : scenarios) {
    std::optional<std::string> reference;
    for (const char* threads : {"1", "4"}) {
      for (int rep = 0; rep < 3; ++rep) {
        int code = 0;
        const std::string cmd = std::string("RELCR_THREADS=") + threads + " " + RELCR_CLI_PATH + " check " +
                                RELCR_SCENARIO_DIR + "/" + name + ".json";
        const std::string out = run_capture(cmd, code);
        ++runs;
        if (code < 0 || code > 2 || out.empty()) ++mismatches;
        if (!reference) reference = out;
        else if (*reference != out) ++mismatches;
      }
    }
  }
  std::ostringstream s;
  s << runs << " runs over " << scenarios.size() << " scenarios, " << mismatches << " byte mismatches";
  return {mismatches == 0, s.str()};
}

}  // namespace

int main() {
  const auto suite = random_instances(240);
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"AC1 torus checker equivalence", [&] { return ac1(suite); }},
      {"AC2 four-dimensional torus example", ac2},
      {"AC3 product counterexample", ac3},
      {"AC4 block-diagonal products", ac4},
      {"AC5 minimal-flag unions and all-opposites checker", [&] { return ac5(suite); }},
      {"AC6 common refinement", ac6},
      {"AC7 classical samples", ac7},
      {"AC8 G2 model", ac8},
      {"AC9 deterministic output", ac9},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " (" << std::fixed
              << std::setprecision(1) << secs << " s)" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
