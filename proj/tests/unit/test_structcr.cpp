#include <doctest.h>

#include "relcr/certificate.hpp"
#include "relcr/structcr.hpp"
#include "support/random_instances.hpp"

using namespace relcr;

namespace {

Subspace coord(std::size_t n, std::vector<std::size_t> one_based) {
  for (auto& i : one_based) --i;
  return Subspace::coordinate(n, one_based);
}

Matrix diag(std::vector<Rational> d) { return Matrix::diagonal(d); }

const BilinForm kSp4 = BilinForm::standard(FormKind::symplectic, 4);

// x -> x + b(x, v) v, which preserves the symplectic form.
Matrix transvection(const Vector& v) {
  Matrix t = Matrix::identity(4);
  const Vector gv = kSp4.gram().apply(v);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t(i, j) += v[i] * gv[j];
  return t;
}

}  // namespace

TEST_CASE("perp and isotropy for the standard symplectic form") {
  CHECK(perp(Subspace::zero(4), kSp4).is_whole());
  CHECK(perp(coord(4, {1}), kSp4) == coord(4, {1, 2, 3}));
  CHECK(perp(Subspace::whole(4), kSp4).is_zero());
  CHECK(is_totally_isotropic(Subspace::zero(4), kSp4));
  CHECK(is_totally_isotropic(coord(4, {1}), kSp4));
  CHECK(is_totally_isotropic(coord(4, {1, 2}), kSp4));
  CHECK_FALSE(is_totally_isotropic(coord(4, {1, 4}), kSp4));
  CHECK_THROWS_AS(BilinForm(FormKind::symplectic, Matrix::identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(BilinForm::standard(FormKind::symplectic, 3), std::invalid_argument);
}

TEST_CASE("perp is an order-reversing involution") {
  std::mt19937_64 rng(12);
  for (const auto kind : {FormKind::symplectic, FormKind::orthogonal}) {
    const BilinForm b = BilinForm::standard(kind, 6);
    for (int trial = 0; trial < 40; ++trial) {
      const auto u = Subspace::span(6, testing::random_matrix(rng, 1 + trial % 4, 6, 2));
      const auto w = subspace_sum(u, Subspace::span(6, testing::random_matrix(rng, 1, 6, 2)));
      CHECK(perp(perp(u, b), b) == u);
      CHECK(perp(u, b).dim() + u.dim() == 6);
      CHECK(subspace_contains(perp(u, b), perp(w, b)));
    }
  }
}

TEST_CASE("form adjoints") {
  CHECK(form_adjoint(Matrix::identity(4), kSp4) == Matrix::identity(4));
  const Matrix t = transvection({Rational(1), Rational(2), Rational(0), Rational(-1)});
  CHECK(form_adjoint(t, kSp4) == *inverse(t));
  const Matrix d = diag({Rational(2), Rational(3), Rational(5), Rational(7)});
  CHECK(form_adjoint(d, kSp4) == diag({Rational(7), Rational(5), Rational(3), Rational(2)}));
  CHECK_THROWS(form_adjoint(Matrix(4, 4), kSp4));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix g = testing::random_invertible(rng, 4), h = testing::random_invertible(rng, 4);
    CHECK(form_adjoint(g * h, kSp4) == form_adjoint(h, kSp4) * form_adjoint(g, kSp4));
    Vector x(4), y(4);
    for (auto& v : x) v = testing::small_entry(rng);
    for (auto& v : y) v = testing::small_entry(rng);
    CHECK(kSp4.pair(g.apply(x), y) == kSp4.pair(x, form_adjoint(g, kSp4).apply(y)));
  }
}

TEST_CASE("pools") {
  const auto trivial = build_pool(GroupH::trivial(2), {}, {unit_vector(2, 0), unit_vector(2, 1)});
  CHECK(trivial.contains(Subspace::zero(2)));
  CHECK(trivial.contains(coord(2, {1})));
  CHECK(trivial.contains(coord(2, {2})));
  CHECK(trivial.contains(Subspace::whole(2)));
  CHECK(trivial.closed());

  Matrix j = Matrix::identity(2);
  j(0, 1) = 1;
  CHECK(build_pool(GroupH(2, {j}), {}, {}).contains(coord(2, {1})));

  Matrix rot(2, 2);
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  const auto irr = build_pool(GroupH(2, {rot}), {}, {});
  CHECK(irr.size() == 2);

  const auto capped = build_pool(GroupH::trivial(5), {}, {}, 6);
  CHECK_FALSE(capped.closed());
}

TEST_CASE("characteristic polynomial and eigenvectors") {
  const Matrix g = diag({Rational(2), Rational(2), Rational(-1)});
  CHECK(characteristic_polynomial(g).eval(Rational(2)) == 0);
  CHECK(characteristic_polynomial(g).eval(Rational(-1)) == 0);
  CHECK(rational_eigenvectors(g).size() == 3);
  Matrix rot(2, 2);
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  CHECK(rational_eigenvectors(rot).empty());
}

TEST_CASE("stable complements") {
  const auto fam = stable_complements(coord(2, {1}), GroupH::trivial(2));
  REQUIRE_FALSE(fam.empty());
  CHECK(fam.dimension() == 1);
  CHECK(are_complements(fam.at({Rational(5)}), coord(2, {1})));

  const auto eig = stable_complements(coord(2, {1}), GroupH(2, {diag({Rational(1), Rational(2)})}));
  REQUIRE_FALSE(eig.empty());
  CHECK(eig.dimension() == 0);
  CHECK(eig.at({}) == coord(2, {2}));

  const GroupH hyper = flag_stabilizer(Flag(4, {coord(4, {1, 2, 3})}));
  CHECK(stable_complements(coord(4, {1, 2, 3}), hyper).empty());
  CHECK_THROWS_AS(stable_complements(coord(4, {4}), hyper), std::invalid_argument);
}

TEST_CASE("stable complement families are exact") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const GroupH h = testing::random_group(rng, n);
    const auto pool = build_pool(h, {}, {});
    for (const auto& m : pool.members()) {
      if (m.space.is_zero() || m.space.is_whole()) continue;
      const auto fam = stable_complements(m.space, h);
      if (fam.empty()) continue;
      Vector p(fam.dimension());
      for (auto& x : p) x = testing::small_entry(rng);
      const auto w = fam.at(p);
      CHECK(are_complements(w, m.space));
      CHECK(h.stabilizes(w));
      // Perturbing the unknowns off the solution set loses stability.
      Vector unknowns = fam.affine().point(p);
      if (unknowns.empty()) continue;
      const auto& a = fam.equations;
      if (a.rows() == 0) continue;
      unknowns[rng() % unknowns.size()] += 1;
      if (a.apply(unknowns) != fam.rhs) {
        const auto bad = Subspace::span(n, fam.spanning_vectors(unknowns));
        CHECK_FALSE(h.stabilizes(bad));
      }
    }
  }
}

TEST_CASE("classical checker on three samples") {
  const GroupH irreducible(4, {transvection(unit_vector(4, 0)), transvection(unit_vector(4, 3)),
                               transvection(unit_vector(4, 1)), transvection(unit_vector(4, 2)),
                               transvection({Rational(1), Rational(1), Rational(0), Rational(0)})});
  const auto pool_irr = build_pool(irreducible, form_adjoints(irreducible.generators(), kSp4), {});
  const auto v1 = relcr_classical(irreducible, kSp4, pool_irr);
  CHECK(v1.value == TriValue::relcr_witnessed);
  CHECK(v1.witnesses.empty());

  const GroupH parabolic = flag_stabilizer(Flag(4, {coord(4, {1}), coord(4, {1, 2, 3})}));
  const auto pool_par = build_pool(parabolic, form_adjoints(parabolic.generators(), kSp4), {});
  const auto v2 = relcr_classical(parabolic, kSp4, pool_par);
  REQUIRE(v2.value == TriValue::not_relcr_witnessed);
  REQUIRE(v2.refutation.has_value());
  CHECK(is_stable(v2.refutation->flag, parabolic));
  CHECK(recheck_refutation(*v2.refutation));
  CHECK(discriminant_recheck(*v2.refutation) == std::optional<bool>(true));

  const GroupH d(4, {diag({Rational(2), Rational(3), Rational(1, 3), Rational(1, 2)})});
  const auto pool_d = build_pool(d, form_adjoints(d.generators(), kSp4), {});
  const auto v3 = relcr_classical(d, kSp4, pool_d);
  CHECK(v3.value == TriValue::relcr_witnessed);
  CHECK_FALSE(v3.witnesses.empty());
  for (const auto& w : v3.witnesses) {
    CHECK(is_classical_flag(w.flag, kSp4));
    CHECK(is_classical_flag(w.opposite, kSp4));
    CHECK(is_stable(w.opposite, d));
    CHECK(verify_opposite(w.flag, w.opposite).has_value());
  }
}

TEST_CASE("a tampered refutation fails the recheck") {
  const GroupH parabolic = flag_stabilizer(Flag(4, {coord(4, {1}), coord(4, {1, 2, 3})}));
  const auto pool = build_pool(parabolic, form_adjoints(parabolic.generators(), kSp4), {});
  auto v = relcr_classical(parabolic, kSp4, pool);
  REQUIRE(v.refutation.has_value());
  REQUIRE_FALSE(v.refutation->linear.empty());
  for (auto& c : v.refutation->linear.front().certificate) c = 0;
  CHECK_FALSE(recheck_refutation(*v.refutation));
  // Dropping every equation leaves a solvable system.
  auto& lin = v.refutation->linear.front();
  lin.equations = Matrix(0, lin.equations.cols());
  lin.rhs.clear();
  CHECK(discriminant_recheck(*v.refutation) == std::optional<bool>(false));
}

TEST_CASE("GL(U) checker") {
  const GLUSplit split(coord(4, {1, 2}), coord(4, {3, 4}));
  CHECK_THROWS_AS(GLUSplit(coord(4, {1, 2}), coord(4, {2, 3})), std::invalid_argument);
  CHECK(split.in_family(coord(4, {1})));
  CHECK(split.in_family(coord(4, {1, 3, 4})));
  CHECK_FALSE(split.in_family(coord(4, {1, 3})));

  Matrix block(4, 4);
  block(0, 0) = 2;
  block(1, 1) = 3;
  block(2, 3) = -1;
  block(3, 2) = 1;
  const GroupH bd(4, {block});
  CHECK(relcr_glu(bd, split, build_pool(bd, {}, {})).value == TriValue::relcr_witnessed);

  Matrix jordan = Matrix::identity(4);
  jordan(0, 1) = 1;
  const GroupH jh(4, {jordan});
  const auto v = relcr_glu(jh, split, build_pool(jh, {}, {}));
  REQUIRE(v.value == TriValue::not_relcr_witnessed);
  CHECK(recheck_refutation(*v.refutation));

  CHECK(relcr_glu(GroupH::trivial(4), split, build_pool(GroupH::trivial(4), {}, {})).value ==
        TriValue::relcr_witnessed);
}

TEST_CASE("classical flag shapes extend isotropic chains") {
  std::mt19937_64 rng(9);
  const BilinForm b = BilinForm::standard(FormKind::orthogonal, 6);
  for (int trial = 0; trial < 30; ++trial) {
    // Random subspace of the maximal isotropic <e1,e2,e3>.
    const auto u = Subspace::span(3, testing::random_matrix(rng, 1 + trial % 3, 3, 2));
    Matrix emb(u.dim(), 6);
    for (std::size_t r = 0; r < u.dim(); ++r)
      for (std::size_t c = 0; c < 3; ++c) emb(r, c) = u.basis()(r, c);
    const auto iso = Subspace::span(6, emb);
    if (iso.is_zero()) continue;
    CHECK(is_totally_isotropic(iso, b));
    CHECK(is_classical_flag(isotropic_flag(iso, b), b));
  }
  CHECK_FALSE(is_classical_flag(Flag(4, {coord(4, {1})}), kSp4));
}

TEST_CASE("certificate verification") {
  const KSpec k{KKind::classical, std::nullopt, std::nullopt, kSp4, std::nullopt};
  const GroupH d(4, {diag({Rational(2), Rational(3), Rational(1, 3), Rational(1, 2)})});
  const Flag f(4, {coord(4, {1}), coord(4, {1, 2, 3})});
  const Flag g(4, {coord(4, {4}), coord(4, {2, 3, 4})});
  CHECK(verify_certificate(d, {{f, g}}, k).accepted);
  CHECK_FALSE(verify_certificate(d, {{f, Flag(4, {coord(4, {4})})}}, k).accepted);
  CHECK_FALSE(verify_certificate(d, {{f, f}}, k).accepted);

  KSpec torus;
  torus.kind = KKind::torus;
  torus.torus = TorusK(4, {{1, 0, 0, -1}, {0, 1, -1, 0}});
  const GroupH hyper = flag_stabilizer(Flag(4, {coord(4, {1, 2, 3})}));
  const auto rep = verify_certificate(hyper, {}, torus);
  CHECK(rep.accepted);
  REQUIRE(rep.covers_minimal.has_value());
  CHECK(*rep.covers_minimal);
  const GroupH plane = flag_stabilizer(Flag(4, {coord(4, {2, 4})}));
  CHECK_FALSE(verify_certificate(plane, {}, torus).accepted);
}

TEST_CASE("family search") {
  // t^2 - 2 = 0 has no rational solution, t^2 - 4 does.
  Poly p(1);
  p.add_term({2}, Rational(1));
  p.add_term({0}, Rational(-2));
  CHECK(search_family(1, {p}, 2).status == FamilySearch::Status::empty);
  Poly q(1);
  q.add_term({2}, Rational(1));
  q.add_term({0}, Rational(-4));
  const auto found = search_family(1, {q}, 2);
  REQUIRE(found.status == FamilySearch::Status::found);
  CHECK(q.eval(found.parameters) == 0);
  CHECK(search_family(0, {}, 2).status == FamilySearch::Status::found);
}
