#pragma once

#include "relcr/matrix.hpp"

#include <cstddef>
#include <vector>

namespace relcr {

// A subspace of Q^n held by its canonical basis: the nonzero rows of the
// reduced row echelon form of any spanning set. Equality is structural.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(std::size_t ambient_dim, const Matrix& spanning_rows);
  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace zero(std::size_t ambient_dim);
  static Subspace whole(std::size_t ambient_dim);
  // span{ e_i : i in indices } (0-based).
  static Subspace coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_whole() const { return dim() == ambient_dim_; }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains_vector(const Vector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
  // Arbitrary but deterministic total order (dimension first).
  friend bool operator<(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_dim_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

// All binary operations throw std::invalid_argument on ambient mismatch.
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
// a ⊇ b.
bool subspace_contains(const Subspace& a, const Subspace& b);
// a ∩ b = 0 and a + b = V.
bool are_complements(const Subspace& a, const Subspace& b);

// g · s. Throws if g is singular or of the wrong size.
Subspace image_under(const Matrix& g, const Subspace& s);
// Same, without the invertibility check (used on pre-validated groups).
Subspace image_under_unchecked(const Matrix& g, const Subspace& s);
bool is_stable_under(const Matrix& g, const Subspace& s);

// { x : <s_i, x> = 0 for all basis vectors s_i } under the standard dot product.
Subspace annihilator(const Subspace& s);

// Coordinate complement: span of the standard basis vectors at the
// non-pivot positions of s's basis.
Subspace coordinate_complement(const Subspace& s);

}  // namespace relcr
