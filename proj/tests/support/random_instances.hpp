#pragma once

#include "relcr/torus.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace relcr::testing {

inline Rational small_entry(std::mt19937_64& rng, int bound = 2) {
  return Rational(std::uniform_int_distribution<int>(-bound, bound)(rng));
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound = 2) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = small_entry(rng, bound);
  return m;
}

inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n, int bound = 2) {
  for (;;) {
    Matrix m = random_matrix(rng, n, n, bound);
    if (is_invertible(m)) return m;
  }
}

inline TorusK random_torus(std::mt19937_64& rng, std::size_t n, std::size_t max_rank = 2) {
  const std::size_t r = std::uniform_int_distribution<std::size_t>(1, std::min(max_rank, n))(rng);
  for (;;) {
    std::vector<Weights> basis(r, Weights(n));
    Matrix m(r, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        basis[i][j] = std::uniform_int_distribution<int>(-2, 2)(rng);
        m(i, j) = basis[i][j];
      }
    if (rank(m) == r) return TorusK(n, basis);
  }
}

// Invertible matrix preserving the coordinate flag of an ordered partition
// of 0..n-1 (block upper triangular after permuting), entries in {-2..2}.
inline Matrix random_parabolic_element(std::mt19937_64& rng, const std::vector<std::vector<std::size_t>>& blocks,
                                       std::size_t n, bool levi_only) {
  std::vector<std::size_t> level(n);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (auto i : blocks[b]) level[i] = b;
  for (;;) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const bool allowed = levi_only ? level[c] == level[r] : level[c] >= level[r];
        if (allowed) m(r, c) = small_entry(rng);
      }
    if (is_invertible(m)) return m;
  }
}

inline std::vector<std::vector<std::size_t>> random_ordered_partition(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<std::size_t>> blocks(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && std::bernoulli_distribution(0.45)(rng)) blocks.emplace_back();
    blocks.back().push_back(perm[i]);
  }
  return blocks;
}

// Up to three generators: arbitrary invertible matrices, or elements of a
// random coordinate parabolic or Levi so that stable flags actually occur.
inline GroupH random_group(std::mt19937_64& rng, std::size_t n) {
  const std::size_t count = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  const int shape = std::uniform_int_distribution<int>(0, 3)(rng);
  const auto blocks = random_ordered_partition(rng, n);
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < count; ++i) {
    if (shape == 0) {
      gens.push_back(random_invertible(rng, n));
    } else {
      const bool levi = shape == 3 || (shape == 2 && std::bernoulli_distribution(0.5)(rng));
      gens.push_back(random_parabolic_element(rng, blocks, n, levi));
    }
  }
  return GroupH(n, std::move(gens));
}

}  // namespace relcr::testing
