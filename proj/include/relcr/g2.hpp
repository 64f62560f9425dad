#pragma once

#include "relcr/structcr.hpp"
#include "relcr/torus.hpp"

#include <array>
#include <cstddef>
#include <tuple>
#include <vector>

namespace relcr {

// The 7-dimensional G2-module: trace-zero split octonions with the
// trilinear form f(x, y, z) = b(xy, z) and the polar b of the norm. In the
// chosen basis the maximal torus acts by diag(s, t, st^-1, 1, s^-1 t, t^-1, s^-1).
struct G2Data {
  std::vector<Rational> trilinear;  // 343 entries, index 49 i + 7 j + k
  BilinForm bilinear;
  TorusK torus;

  const Rational& f(std::size_t i, std::size_t j, std::size_t k) const { return trilinear[49 * i + 7 * j + k]; }
  Rational trilinear_eval(const Vector& x, const Vector& y, const Vector& z) const;
  // Nonzero structure constants (i, j, k, value), i < j < k.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>> sparse_triples() const;
};

// Builds the model from the Zorn vector-matrix multiplication and checks
// the norm is multiplicative before returning.
G2Data build_g2_data();
// Rebuilds a G2Data from stored constants (fixture form).
G2Data g2_from_constants(const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>>& triples,
                         const Matrix& gram, const std::vector<Weights>& lattice);

struct G2Invariants {
  bool alternating = false;
  bool trilinear_torus_invariant = false;
  bool bilinear_torus_invariant = false;
  bool weights_match = false;
  bool ok() const { return alternating && trilinear_torus_invariant && bilinear_torus_invariant && weights_match; }
};
G2Invariants check_g2_invariants(const G2Data& d);

// dim 1: b(x, x) = 0 (f(x, x, .) vanishes by alternation).
// dim 2: b vanishes on u x u and f vanishes on u x u x V.
// Throws std::invalid_argument for other dimensions.
bool is_doubly_singular(const Subspace& u, const G2Data& d);
// Radical of (u, v) -> f(x, u, v) for a doubly singular line <x>; 3-dimensional.
Subspace delta(const Subspace& u, const G2Data& d);
// dim 2: (u ⊂ u^⊥); dim 1: (u ⊂ Δ(u) ⊂ Δ(u)^⊥ ⊂ u^⊥).
Flag g2_minimal_flag(const Subspace& u, const G2Data& d);
// The three flag shapes of F_K: {2,5}, {1,3,4,6} and the full flag
// U1 ⊂ U2 ⊂ Δ(U1) ⊂ Δ(U1)^⊥ ⊂ U2^⊥ ⊂ U1^⊥.
bool is_g2_flag(const Flag& f, const G2Data& d);

SubspacePool build_g2_pool(const GroupH& h, const G2Data& d, const std::vector<Vector>& seeds = {},
                           std::size_t cap = kDefaultPoolCap);

TriVerdict relcr_g2(const GroupH& h, const G2Data& d, const SubspacePool& pool,
                    std::size_t elim_dim_cap = kDefaultElimCap);

}  // namespace relcr
