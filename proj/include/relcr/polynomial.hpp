#pragma once

#include "relcr/matrix.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace relcr {

// Dense univariate polynomial, coeffs[i] multiplies x^i. Always trimmed.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational eval(const Rational& x) const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly monic() const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Quotient and remainder; throws on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);

struct RootSearch {
  std::vector<Rational> roots;  // sorted, distinct
  bool complete = true;         // false if an integer could not be factored
};

// All rational roots, by the rational root theorem on the primitive
// integer form. Not meaningful for the zero polynomial.
RootSearch rational_roots(const UPoly& p);

// Sparse multivariate polynomial over Q in a fixed number of variables.
class Poly {
 public:
  using Exponents = std::vector<unsigned>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  unsigned degree_in(std::size_t var) const;
  unsigned total_degree() const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  void add_term(const Exponents& e, const Rational& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& s) const;

  Rational eval(const Vector& point) const;
  // Replace variable var by a value; nvars is unchanged.
  Poly substitute(std::size_t var, const Rational& value) const;
  // Coefficients of var^0, var^1, ... as polynomials without var.
  std::vector<Poly> coefficients_in(std::size_t var) const;
  // Requires every other variable to be absent.
  UPoly to_univariate(std::size_t var) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

 private:
  std::size_t nvars_ = 0;
  std::map<Exponents, Rational> terms_;
};

// Sylvester resultant eliminating var; both inputs must involve var.
Poly resultant(const Poly& p, const Poly& q, std::size_t var);

// Exact decision of rational solvability for a polynomial system in at
// most two variables.
struct SolveOutcome {
  enum class Status { empty, found, unknown };
  Status status = Status::unknown;
  Vector point;               // when found
  std::string reason;         // when unknown, or how emptiness was shown
  std::vector<UPoly> eliminants;  // univariate polynomials used in the proof
};

SolveOutcome rational_solutions(const std::vector<Poly>& system, std::size_t nvars);

// Independent emptiness check for systems in at most one variable of
// degree at most two: explicit roots from the discriminant (a root is
// rational iff the discriminant is a rational square). Returns nullopt
// when the system is outside that class.
std::optional<bool> discriminant_confirms_empty(const std::vector<Poly>& system);

// Replaces var by a polynomial in the same variables.
Poly compose(const Poly& p, std::size_t var, const Poly& value);

// Removes variables that occur in some equation only as c * x (c constant)
// by substitution until at most one variable is left, then applies
// discriminant_confirms_empty to what remains. nullopt when the system
// cannot be brought into that class.
std::optional<bool> eliminate_then_discriminant(std::vector<Poly> system);

}  // namespace relcr
