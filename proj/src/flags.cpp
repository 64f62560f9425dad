#include "relcr/flags.hpp"

#include <stdexcept>

namespace relcr {

Flag::Flag(std::size_t ambient_dim, std::vector<Subspace> chain)
    : ambient_dim_(ambient_dim), chain_(std::move(chain)) {
  for (std::size_t i = 0; i < chain_.size(); ++i) {
    const Subspace& s = chain_[i];
    if (s.ambient_dim() != ambient_dim_) throw std::invalid_argument("flag member has wrong ambient dimension");
    if (s.is_zero() || s.is_whole()) throw std::invalid_argument("flag members must be proper and nonzero");
    if (i > 0 && (chain_[i - 1].dim() >= s.dim() || !subspace_contains(s, chain_[i - 1]))) {
      throw std::invalid_argument("flag chain is not strictly increasing");
    }
  }
}

std::vector<std::size_t> Flag::dimensions() const {
  std::vector<std::size_t> dims;
  for (const auto& s : chain_) dims.push_back(s.dim());
  return dims;
}

bool operator<(const Flag& a, const Flag& b) {
  if (a.ambient_dim_ != b.ambient_dim_) return a.ambient_dim_ < b.ambient_dim_;
  return a.chain_ < b.chain_;
}

GroupH::GroupH(std::size_t ambient_dim, std::vector<Matrix> generators)
    : ambient_dim_(ambient_dim), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.rows() != ambient_dim_ || g.cols() != ambient_dim_) throw std::invalid_argument("generator has wrong size");
    if (!is_invertible(g)) throw std::invalid_argument("generator is singular");
  }
}

bool GroupH::stabilizes(const Subspace& s) const {
  for (const auto& g : generators_) {
    if (!is_stable_under(g, s)) return false;
  }
  return true;
}

GradedDecomposition::GradedDecomposition(std::size_t ambient_dim, std::vector<Subspace> pieces)
    : ambient_dim_(ambient_dim), pieces_(std::move(pieces)) {
  std::size_t total = 0;
  Subspace acc = Subspace::zero(ambient_dim_);
  for (const auto& p : pieces_) {
    if (p.ambient_dim() != ambient_dim_) throw std::invalid_argument("piece has wrong ambient dimension");
    if (p.is_zero()) throw std::invalid_argument("decomposition pieces must be nonzero");
    total += p.dim();
    acc = subspace_sum(acc, p);
  }
  if (total != ambient_dim_ || !acc.is_whole()) throw std::invalid_argument("pieces do not form a direct sum decomposition of V");
}

bool flag_coarser_eq(const Flag& f1, const Flag& f2) {
  if (f1.ambient_dim() != f2.ambient_dim()) throw std::invalid_argument("flag_coarser_eq: dimension mismatch");
  std::size_t j = 0;
  for (const auto& s : f1.chain()) {
    while (j < f2.length() && f2.chain()[j].dim() < s.dim()) ++j;
    if (j == f2.length() || f2.chain()[j] != s) return false;
  }
  return true;
}

bool is_stable(const Flag& f, const GroupH& h) {
  for (const auto& s : f.chain()) {
    if (!h.stabilizes(s)) return false;
  }
  return true;
}

std::optional<GradedDecomposition> verify_opposite(const Flag& f1, const Flag& f2) {
  if (f1.ambient_dim() != f2.ambient_dim()) throw std::invalid_argument("verify_opposite: dimension mismatch");
  const std::size_t n = f1.ambient_dim();
  const std::size_t m = f1.length();
  if (f2.length() != m) return std::nullopt;
  // 1-based accessors with f[m+1] = V.
  auto member = [n, m](const Flag& f, std::size_t i) {
    return i == m + 1 ? Subspace::whole(n) : f.chain()[i - 1];
  };
  for (std::size_t i = 1; i <= m; ++i) {
    const Subspace a = member(f1, i);
    const Subspace b = member(f2, m + 1 - i);
    if (a.dim() + b.dim() != n) return std::nullopt;
    if (!subspace_intersect(a, b).is_zero()) return std::nullopt;
  }
  std::vector<Subspace> pieces;
  for (std::size_t i = 1; i <= m + 1; ++i) {
    pieces.push_back(subspace_intersect(member(f1, i), member(f2, m + 2 - i)));
  }
  return GradedDecomposition(n, std::move(pieces));
}

bool stabilizes_decomposition(const GradedDecomposition& d, const GroupH& h) {
  for (const auto& p : d.pieces()) {
    if (!h.stabilizes(p)) return false;
  }
  return true;
}

namespace {

// Builds conj * x * conj^{-1} for the standard generators of the block
// upper triangular (or block diagonal) group with the given block sizes.
GroupH block_group(std::size_t n, const Matrix& adapted, const std::vector<std::size_t>& block_of, bool triangular) {
  const Matrix adapted_inv = *inverse(adapted);
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix d = Matrix::identity(n);
    d(i, i) = 2;
    gens.push_back(adapted * d * adapted_inv);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool allowed = triangular ? block_of[i] <= block_of[j] : block_of[i] == block_of[j];
      if (!allowed) continue;
      Matrix e = Matrix::identity(n);
      e(i, j) = 1;
      gens.push_back(adapted * e * adapted_inv);
    }
  }
  return GroupH(n, std::move(gens));
}

}  // namespace

GroupH flag_stabilizer(const Flag& f) {
  const std::size_t n = f.ambient_dim();
  // Columns of `adapted` extend bases of f[0] ⊂ f[1] ⊂ ... ⊂ V.
  std::vector<Vector> cols;
  std::vector<std::size_t> block_of;
  Subspace current = Subspace::zero(n);
  auto extend_to = [&](const Subspace& target, std::size_t block) {
    for (std::size_t r = 0; r < target.dim(); ++r) {
      const Vector v = target.basis().row(r);
      if (current.contains_vector(v)) continue;
      cols.push_back(v);
      block_of.push_back(block);
      current = subspace_sum(current, Subspace::span(n, std::vector<Vector>{v}));
    }
  };
  for (std::size_t b = 0; b < f.length(); ++b) extend_to(f.chain()[b], b);
  extend_to(Subspace::whole(n), f.length());
  return block_group(n, Matrix::from_rows(cols).transpose(), block_of, true);
}

GroupH decomposition_stabilizer(const GradedDecomposition& d) {
  const std::size_t n = d.ambient_dim();
  std::vector<Vector> cols;
  std::vector<std::size_t> block_of;
  for (std::size_t b = 0; b < d.pieces().size(); ++b) {
    for (std::size_t r = 0; r < d.pieces()[b].dim(); ++r) {
      cols.push_back(d.pieces()[b].basis().row(r));
      block_of.push_back(b);
    }
  }
  return block_group(n, Matrix::from_rows(cols).transpose(), block_of, false);
}

}  // namespace relcr
