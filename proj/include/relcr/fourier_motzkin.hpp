#pragma once

#include "relcr/matrix.hpp"

#include <optional>
#include <vector>

namespace relcr {

// coeffs · y + constant > 0 (strict) or >= 0.
struct LinearInequality {
  Vector coeffs;
  Rational constant;
  bool strict = false;
};

// Exact Fourier-Motzkin elimination with strictness tracking. Returns a
// point satisfying every inequality, or nullopt if the system is
// infeasible over the rationals (equivalently over the reals).
std::optional<Vector> fm_feasible_point(const std::vector<LinearInequality>& system, std::size_t nvars);

bool satisfies(const LinearInequality& ineq, const Vector& point);

}  // namespace relcr
