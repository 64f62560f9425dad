#include <doctest.h>

#include "relcr/matrix.hpp"
#include "support/random_instances.hpp"

using namespace relcr;

namespace {

Matrix rows(std::vector<std::vector<long>> r) {
  std::vector<Vector> v;
  for (auto& row : r) {
    Vector x;
    for (auto e : row) x.push_back(Rational(e));
    v.push_back(x);
  }
  return Matrix::from_rows(v);
}

}  // namespace

TEST_CASE("rational parsing round-trips canonical strings") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-0/5")) == "0");
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational(" 7 "), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("2/-4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(floor_rational(Rational(-7, 2)) == -4);
  CHECK(ceil_rational(Rational(-7, 2)) == -3);
}

TEST_CASE("rref, rank and kernel on a fixed matrix") {
  const Matrix m = rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  const auto r = rref(m);
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});
  const Matrix k = kernel(m);
  REQUIRE(k.rows() == 1);
  CHECK(is_zero(m.apply(k.row(0))));
  CHECK(determinant(m) == 0);
  CHECK_FALSE(inverse(m).has_value());
}

TEST_CASE("inverse and determinant agree on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const Matrix a = testing::random_matrix(rng, n, n, 3);
    const auto inv = inverse(a);
    CHECK(inv.has_value() == (determinant(a) != 0));
    if (inv) {
      CHECK(a * *inv == Matrix::identity(n));
      CHECK(determinant(a) * determinant(*inv) == 1);
    }
  }
}

TEST_CASE("rank-nullity holds on random rectangular matrices") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 6;
    const Matrix a = testing::random_matrix(rng, r, c, 1);
    const Matrix k = kernel(a);
    CHECK(rank(a) + k.rows() == c);
    for (std::size_t i = 0; i < k.rows(); ++i) CHECK(is_zero(a.apply(k.row(i))));
  }
}

TEST_CASE("solve_affine returns a solution family or a certificate") {
  SUBCASE("consistent") {
    const Matrix a = rows({{1, 1, 0}, {0, 1, 1}});
    const Vector b{Rational(2), Rational(3)};
    const auto res = solve_affine(a, b);
    REQUIRE(std::holds_alternative<AffineSolution>(res));
    const auto& s = std::get<AffineSolution>(res);
    CHECK(s.dimension() == 1);
    CHECK(a.apply(s.point({Rational(7, 3)})) == b);
  }
  SUBCASE("inconsistent") {
    const Matrix a = rows({{1, 1}, {2, 2}});
    const Vector b{Rational(1), Rational(3)};
    const auto res = solve_affine(a, b);
    REQUIRE(std::holds_alternative<EmptySolution>(res));
    const auto& y = std::get<EmptySolution>(res).certificate;
    CHECK(verify_inconsistency(a, b, y));
    CHECK_FALSE(verify_inconsistency(a, b, Vector{Rational(1), Rational(0)}));
  }
  SUBCASE("randomized") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
      const Matrix a = testing::random_matrix(rng, r, c, 2);
      Vector b(r);
      for (auto& x : b) x = testing::small_entry(rng, 3);
      const auto res = solve_affine(a, b);
      if (const auto* s = std::get_if<AffineSolution>(&res)) {
        Vector p(s->dimension());
        for (auto& x : p) x = testing::small_entry(rng);
        CHECK(a.apply(s->point(p)) == b);
        for (std::size_t i = 0; i < s->homogeneous.rows(); ++i) CHECK(is_zero(a.apply(s->homogeneous.row(i))));
      } else {
        CHECK(verify_inconsistency(a, b, std::get<EmptySolution>(res).certificate));
      }
    }
  }
}
