#include "relcr/fourier_motzkin.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace relcr {

namespace {

// Scale so the first nonzero coefficient has absolute value 1; keeps the
// deduplication below effective.
LinearInequality normalised(LinearInequality ineq) {
  Rational lead = 0;
  for (const auto& c : ineq.coeffs) {
    if (c != 0) {
      lead = abs(c);
      break;
    }
  }
  if (lead == 0) lead = abs(ineq.constant);
  if (lead != 0 && lead != 1) {
    for (auto& c : ineq.coeffs) c /= lead;
    ineq.constant /= lead;
  }
  return ineq;
}

struct IneqKey {
  Vector coeffs;
  Rational constant;
  bool strict;
  bool operator<(const IneqKey& o) const {
    return std::tie(coeffs, constant, strict) < std::tie(o.coeffs, o.constant, o.strict);
  }
};

// Constant inequality (all coeffs zero): is it violated?
bool violated_constant(const LinearInequality& ineq) {
  return ineq.strict ? ineq.constant <= 0 : ineq.constant < 0;
}

bool all_zero_upto(const Vector& v, std::size_t end) {
  for (std::size_t i = 0; i < end; ++i) {
    if (v[i] != 0) return false;
  }
  return true;
}

}  // namespace

bool satisfies(const LinearInequality& ineq, const Vector& point) {
  const Rational value = dot(ineq.coeffs, point) + ineq.constant;
  return ineq.strict ? value > 0 : value >= 0;
}

std::optional<Vector> fm_feasible_point(const std::vector<LinearInequality>& system, std::size_t nvars) {
  // levels[k] holds the inequalities whose last nonzero coefficient is y_k.
  std::vector<std::vector<LinearInequality>> levels(nvars);
  std::vector<LinearInequality> current;
  {
    std::map<IneqKey, bool> seen;
    for (const auto& raw : system) {
      if (raw.coeffs.size() != nvars) throw std::invalid_argument("fm_feasible_point: coefficient length mismatch");
      auto ineq = normalised(raw);
      if (seen.emplace(IneqKey{ineq.coeffs, ineq.constant, ineq.strict}, true).second) current.push_back(ineq);
    }
  }

  for (std::size_t k = nvars; k-- > 0;) {
    std::vector<LinearInequality> pos;
    std::vector<LinearInequality> neg;
    std::vector<LinearInequality> rest;
    for (auto& ineq : current) {
      const int s = sgn(ineq.coeffs[k]);
      if (s > 0) {
        pos.push_back(ineq);
      } else if (s < 0) {
        neg.push_back(ineq);
      } else {
        rest.push_back(ineq);
      }
    }
    levels[k] = pos;
    levels[k].insert(levels[k].end(), neg.begin(), neg.end());

    std::map<IneqKey, bool> seen;
    for (const auto& r : rest) seen.emplace(IneqKey{r.coeffs, r.constant, r.strict}, true);
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // (-q_k) * p + p_k * q cancels y_k with positive multipliers.
        const Rational mp = -q.coeffs[k];
        const Rational mq = p.coeffs[k];
        LinearInequality comb;
        comb.coeffs.resize(nvars);
        for (std::size_t i = 0; i < nvars; ++i) comb.coeffs[i] = mp * p.coeffs[i] + mq * q.coeffs[i];
        comb.coeffs[k] = 0;
        comb.constant = mp * p.constant + mq * q.constant;
        comb.strict = p.strict || q.strict;
        comb = normalised(comb);
        if (all_zero_upto(comb.coeffs, nvars)) {
          if (violated_constant(comb)) return std::nullopt;
          continue;
        }
        if (seen.emplace(IneqKey{comb.coeffs, comb.constant, comb.strict}, true).second) rest.push_back(comb);
      }
    }
    current = std::move(rest);
  }
  for (const auto& c : current) {
    if (violated_constant(c)) return std::nullopt;
  }

  // Back substitution, y_0 first.
  Vector point(nvars);
  for (std::size_t k = 0; k < nvars; ++k) {
    std::optional<Rational> lo, hi;
    bool lo_strict = false;
    bool hi_strict = false;
    for (const auto& ineq : levels[k]) {
      Rational partial = ineq.constant;
      for (std::size_t i = 0; i < k; ++i) partial += ineq.coeffs[i] * point[i];
      const Rational bound = -partial / ineq.coeffs[k];
      if (ineq.coeffs[k] > 0) {
        if (!lo || bound > *lo || (bound == *lo && ineq.strict)) {
          lo = bound;
          lo_strict = ineq.strict;
        }
      } else {
        if (!hi || bound < *hi || (bound == *hi && ineq.strict)) {
          hi = bound;
          hi_strict = ineq.strict;
        }
      }
    }
    if (lo && hi) {
      if (*lo < *hi) {
        point[k] = (*lo + *hi) / 2;
      } else if (*lo == *hi && !lo_strict && !hi_strict) {
        point[k] = *lo;
      } else {
        throw std::logic_error("Fourier-Motzkin back substitution found an empty interval");
      }
    } else if (lo) {
      point[k] = Rational(floor_rational(*lo) + 1);
    } else if (hi) {
      point[k] = Rational(ceil_rational(*hi) - 1);
    } else {
      point[k] = 0;
    }
  }
  for (const auto& ineq : system) {
    if (!satisfies(ineq, point)) throw std::logic_error("Fourier-Motzkin produced a point violating the system");
  }
  return point;
}

}  // namespace relcr
