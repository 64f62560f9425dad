#pragma once

#include "relcr/subspace.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace relcr {

// A strictly increasing chain of proper nonzero subspaces of Q^n. V is
// implicit at the top; the empty chain is the trivial flag.
class Flag {
 public:
  Flag() = default;
  // Throws std::invalid_argument unless the chain is strictly increasing
  // and every member is proper and nonzero.
  Flag(std::size_t ambient_dim, std::vector<Subspace> chain);

  static Flag trivial(std::size_t ambient_dim) { return Flag(ambient_dim, {}); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Subspace>& chain() const { return chain_; }
  std::size_t length() const { return chain_.size(); }
  bool is_trivial() const { return chain_.empty(); }
  std::vector<std::size_t> dimensions() const;

  friend bool operator==(const Flag& a, const Flag& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.chain_ == b.chain_;
  }
  friend bool operator<(const Flag& a, const Flag& b);

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Subspace> chain_;
};

// Finitely generated matrix group; its Zariski closure is the group H
// being tested. A subspace is H-stable iff every generator preserves it.
class GroupH {
 public:
  GroupH() = default;
  // Throws std::invalid_argument on a singular or mis-sized generator.
  GroupH(std::size_t ambient_dim, std::vector<Matrix> generators);

  static GroupH trivial(std::size_t ambient_dim) { return GroupH(ambient_dim, {}); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Matrix>& generators() const { return generators_; }

  bool stabilizes(const Subspace& s) const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Matrix> generators_;
};

// V = pieces[0] ⊕ pieces[1] ⊕ ...
class GradedDecomposition {
 public:
  GradedDecomposition() = default;
  // Throws unless the pieces are nonzero, independent and span V.
  GradedDecomposition(std::size_t ambient_dim, std::vector<Subspace> pieces);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Subspace>& pieces() const { return pieces_; }

  friend bool operator==(const GradedDecomposition& a, const GradedDecomposition& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.pieces_ == b.pieces_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Subspace> pieces_;
};

// f1 ≼ f2: every member of f1 occurs in f2, i.e. Stab(f1) ⊇ Stab(f2).
bool flag_coarser_eq(const Flag& f1, const Flag& f2);

bool is_stable(const Flag& f, const GroupH& h);

// Opposition test. Both chains must have the same length m, the members
// f1[i] and f2[m+1-i] (1-based) must be complementary, and on success
// the graded pieces V_i = f1[i] ∩ f2[m+2-i], i = 1..m+1 (with f[m+1] = V)
// are returned; their common stabilizer is the Levi of both flags.
std::optional<GradedDecomposition> verify_opposite(const Flag& f1, const Flag& f2);

bool stabilizes_decomposition(const GradedDecomposition& d, const GroupH& h);

// Generators of the full stabilizer of a flag in GL(V): dilations and
// elementary transvections in a basis adapted to the chain.
GroupH flag_stabilizer(const Flag& f);
// Generators of the stabilizer of every piece of a decomposition.
GroupH decomposition_stabilizer(const GradedDecomposition& d);

}  // namespace relcr
