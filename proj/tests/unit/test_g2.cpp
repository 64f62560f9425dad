#include <doctest.h>

#include "relcr/g2.hpp"
#include "relcr/json_io.hpp"

#include <map>
#include <random>
#include <set>

using namespace relcr;

namespace {

const G2Data& model() {
  static const G2Data d = build_g2_data();
  return d;
}

Subspace coord(std::vector<std::size_t> one_based) {
  for (auto& i : one_based) --i;
  return Subspace::coordinate(7, one_based);
}

}  // namespace

TEST_CASE("invariants of the model") {
  const auto inv = check_g2_invariants(model());
  CHECK(inv.alternating);
  CHECK(inv.trilinear_torus_invariant);
  CHECK(inv.bilinear_torus_invariant);
  CHECK(inv.weights_match);
  CHECK(model().torus.character(3) == Weights{0, 0});
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) CHECK((model().bilinear.gram()(i, j) != 0) == (i + j == 6));
}

TEST_CASE("alternation on random vectors") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    Vector x(7), y(7), z(7);
    for (std::size_t i = 0; i < 7; ++i) {
      x[i] = e(rng);
      y[i] = e(rng);
      z[i] = e(rng);
    }
    CHECK(model().trilinear_eval(x, x, y) == 0);
    CHECK(model().trilinear_eval(x, y, z) == -model().trilinear_eval(y, x, z));
    CHECK(model().trilinear_eval(x, y, z) == model().trilinear_eval(y, z, x));
  }
}

TEST_CASE("torus flag patterns") {
  const TorusFlagCatalog cat(model().torus);
  std::map<std::vector<std::size_t>, int> all, minimal;
  for (const auto& t : cat.all())
    if (!t.type.is_trivial()) ++all[cat.flag(t.type).dimensions()];
  for (const auto& t : cat.minimal()) ++minimal[cat.flag(t.type).dimensions()];
  const std::map<std::vector<std::size_t>, int> expected_all{{{2, 5}, 6}, {{1, 3, 4, 6}, 6}, {{1, 2, 3, 4, 5, 6}, 12}};
  const std::map<std::vector<std::size_t>, int> expected_min{{{2, 5}, 6}, {{1, 3, 4, 6}, 6}};
  CHECK(all == expected_all);
  CHECK(minimal == expected_min);
  for (const auto& t : cat.all())
    if (!t.type.is_trivial()) CHECK(is_g2_flag(cat.flag(t.type), model()));
}

TEST_CASE("doubly singular subspaces and delta") {
  CHECK(is_doubly_singular(coord({1}), model()));
  CHECK_FALSE(is_doubly_singular(coord({4}), model()));
  CHECK(is_doubly_singular(coord({1, 2}), model()));
  CHECK(is_doubly_singular(coord({6, 7}), model()));
  CHECK_FALSE(is_doubly_singular(coord({1, 7}), model()));
  CHECK_THROWS_AS(is_doubly_singular(coord({1, 2, 3}), model()), std::invalid_argument);
  CHECK(delta(coord({1}), model()) == coord({1, 2, 3}));
  CHECK_THROWS(delta(coord({4}), model()));

  for (std::size_t i = 1; i <= 7; ++i) {
    if (i == 4) continue;
    const auto u = coord({i});
    REQUIRE(is_doubly_singular(u, model()));
    const auto d = delta(u, model());
    CHECK(d.dim() == 3);
    const Flag f = g2_minimal_flag(u, model());
    CHECK(f.dimensions() == std::vector<std::size_t>{1, 3, 4, 6});
    CHECK(f.chain()[1] == d);
  }
}

TEST_CASE("delta is torus equivariant") {
  const Matrix t = Matrix::diagonal({Rational(2), Rational(3), Rational(2, 3), Rational(1), Rational(3, 2),
                                     Rational(1, 3), Rational(1, 2)});
  const Vector x{Rational(1), Rational(0), Rational(0), Rational(0), Rational(0), Rational(0), Rational(0)};
  const auto u = Subspace::span(7, std::vector<Vector>{x});
  CHECK(delta(image_under(t, u), model()) == image_under(t, delta(u, model())));
}

TEST_CASE("minimal flags of planes have coordinate opposites") {
  const Flag f = g2_minimal_flag(coord({1, 2}), model());
  CHECK(f.dimensions() == std::vector<std::size_t>{2, 5});
  const Flag g = g2_minimal_flag(coord({6, 7}), model());
  CHECK(verify_opposite(f, g).has_value());
}

TEST_CASE("checker examples") {
  const GroupH levi = decomposition_stabilizer(GradedDecomposition(7, {coord({1, 2}), coord({3, 4, 5}), coord({6, 7})}));
  const auto v = relcr_g2(levi, model(), build_g2_pool(levi, model()));
  REQUIRE(v.value == TriValue::relcr_witnessed);
  bool found = false;
  for (const auto& w : v.witnesses) {
    CHECK(verify_opposite(w.flag, w.opposite).has_value());
    if (w.flag == g2_minimal_flag(coord({1, 2}), model()) && w.opposite == g2_minimal_flag(coord({6, 7}), model()))
      found = true;
  }
  CHECK(found);

  const GroupH torus(7, {Matrix::diagonal({Rational(2), Rational(3), Rational(2, 3), Rational(1), Rational(3, 2),
                                          Rational(1, 3), Rational(1, 2)})});
  CHECK(relcr_g2(torus, model(), build_g2_pool(torus, model())).value == TriValue::relcr_witnessed);

  const GroupH parabolic = flag_stabilizer(Flag(7, {coord({1, 2}), coord({1, 2, 3, 4, 5})}));
  const auto p = relcr_g2(parabolic, model(), build_g2_pool(parabolic, model()));
  REQUIRE(p.value == TriValue::not_relcr_witnessed);
  CHECK(recheck_refutation(*p.refutation));

  // One Jordan block whose invariant subspaces all contain the nonsingular e4.
  Matrix uni = Matrix::identity(7);
  const std::size_t chain[] = {3, 0, 1, 2, 4, 5, 6};
  for (std::size_t k = 1; k < 7; ++k) uni(chain[k - 1], chain[k]) = 1;
  const GroupH single(7, {uni});
  const auto w = relcr_g2(single, model(), build_g2_pool(single, model()));
  CHECK(w.value == TriValue::relcr_witnessed);
  CHECK(w.witnesses.empty());
}

TEST_CASE("fixture round trip") {
  const json j = g2_fixture_to_json(model());
  const G2Data back = g2_fixture_from_json(j);
  CHECK(back.trilinear == model().trilinear);
  CHECK(back.bilinear.gram() == model().bilinear.gram());
  CHECK(check_g2_invariants(back).ok());

  json bad = j;
  bad["trilinear"].push_back({1, 2, 3, "1"});
  CHECK_FALSE(check_g2_invariants(g2_fixture_from_json(bad)).ok());
}
