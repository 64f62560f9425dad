#include <doctest.h>

#include "relcr/polynomial.hpp"

#include <random>

using namespace relcr;

namespace {

UPoly up(std::vector<long> c) {
  std::vector<Rational> r;
  for (auto x : c) r.push_back(Rational(x));
  return UPoly(r);
}

// x^i y^j with coefficient c in two variables.
Poly mono(long c, unsigned i, unsigned j) {
  Poly p(2);
  p.add_term({i, j}, Rational(c));
  return p;
}

}  // namespace

TEST_CASE("univariate arithmetic") {
  const UPoly a = up({-1, 0, 1});  // x^2 - 1
  const UPoly b = up({1, 1});      // x + 1
  const auto [q, r] = divmod(a, b);
  CHECK(q == up({-1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(a, up({-1, 1}) * up({2, 1})) == up({-1, 1}));
  CHECK(a.eval(Rational(3)) == 8);
  CHECK_THROWS(divmod(a, UPoly()));
}

TEST_CASE("rational roots") {
  // 6x^3 - 5x^2 - 2x + 1 = (x - 1)(2x + 1)(3x - 1)
  const auto r = rational_roots(up({1, -2, -5, 6}));
  CHECK(r.complete);
  CHECK(r.roots == std::vector<Rational>{Rational(-1, 2), Rational(1, 3), Rational(1)});
  CHECK(rational_roots(up({-2, 0, 1})).roots.empty());
  CHECK(rational_roots(up({0, 0, 1})).roots == std::vector<Rational>{Rational(0)});
}

TEST_CASE("roots of random products of linear factors") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    UPoly p = up({1});
    std::vector<Rational> expected;
    for (int k = 0; k < 1 + trial % 4; ++k) {
      const long num = std::uniform_int_distribution<long>(-9, 9)(rng);
      const long den = std::uniform_int_distribution<long>(1, 5)(rng);
      p = p * up({-num, den});
      Rational root(num, den);
      root.canonicalize();
      expected.push_back(root);
    }
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    CHECK(rational_roots(p).roots == expected);
  }
}

TEST_CASE("resultant detects a common root") {
  // x - y and x + y - 2 meet at (1, 1); eliminating x leaves a multiple of y - 1.
  const Poly f = mono(1, 1, 0) - mono(1, 0, 1);
  const Poly g = mono(1, 1, 0) + mono(1, 0, 1) - mono(2, 0, 0);
  const Poly r = resultant(f, g, 0);
  CHECK_FALSE(r.involves(0));
  CHECK(r.substitute(1, Rational(1)).is_zero());
}

TEST_CASE("rational solvability in two variables") {
  SUBCASE("circle meets a line rationally") {
    const Poly circle = mono(1, 2, 0) + mono(1, 0, 2) - mono(1, 0, 0);
    const Poly line = mono(1, 1, 0) - mono(1, 0, 1);
    const auto s = rational_solutions({circle, line}, 2);
    // x = y, 2x^2 = 1 has no rational solution.
    CHECK(s.status == SolveOutcome::Status::empty);
  }
  SUBCASE("found") {
    const Poly a = mono(1, 2, 0) - mono(4, 0, 0);
    const Poly b = mono(1, 0, 1) - mono(1, 1, 0) - mono(1, 0, 0);
    const auto s = rational_solutions({a, b}, 2);
    REQUIRE(s.status == SolveOutcome::Status::found);
    CHECK(a.eval(s.point) == 0);
    CHECK(b.eval(s.point) == 0);
  }
  SUBCASE("one variable") {
    Poly p(1);
    p.add_term({2}, Rational(1));
    p.add_term({0}, Rational(-3));
    CHECK(rational_solutions({p}, 1).status == SolveOutcome::Status::empty);
  }
  SUBCASE("nonzero constant") {
    CHECK(rational_solutions({Poly::constant(2, Rational(1))}, 2).status == SolveOutcome::Status::empty);
  }
}

TEST_CASE("discriminant check agrees with root finding on random quadratics") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p(1);
    for (unsigned e = 0; e <= 2; ++e) p.add_term({e}, Rational(std::uniform_int_distribution<long>(-5, 5)(rng)));
    if (p.is_zero()) continue;
    const auto disc = discriminant_confirms_empty({p});
    REQUIRE(disc.has_value());
    const auto s = rational_solutions({p}, 1);
    CHECK(*disc == (s.status == SolveOutcome::Status::empty));
  }
  Poly cubic(1);
  cubic.add_term({3}, Rational(1));
  CHECK_FALSE(discriminant_confirms_empty({cubic}).has_value());
}

TEST_CASE("substitution followed by discriminants") {
  // x + y - 1 = 0, x - y = 0, 2x^2 - 1 = 0 in three variables: no rational point.
  Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);
  const Poly one = Poly::constant(3, 1);
  CHECK(eliminate_then_discriminant({x + y - one, x - y, (x * x).scaled(2) - one}) == std::optional<bool>(true));
  // Same with x^2 = 1/4, which the point (1/2, 1/2) satisfies.
  CHECK(eliminate_then_discriminant({x + y - one, x - y, (x * x).scaled(4) - one}) == std::optional<bool>(false));
  // Inconsistent linear system.
  CHECK(eliminate_then_discriminant({x + y + z - one, x + y + z}) == std::optional<bool>(true));
  // Two genuinely quadratic variables are out of reach.
  CHECK_FALSE(eliminate_then_discriminant({x * x + y * y - one}).has_value());
  CHECK(compose(x * y, 0, y + one) == y * y + y);
}
