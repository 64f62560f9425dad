#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace relcr {

// Arbitrary-precision rationals. mpq_class keeps values canonical
// (gcd(num, den) = 1, den > 0) as long as they are built through the
// helpers below or through arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
// input or a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when q = 1.
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

inline Integer floor_rational(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_rational(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace relcr
