#include "relcr/subspace.hpp"

#include <stdexcept>

namespace relcr {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("subspace ambient dimension mismatch");
}

}  // namespace

Subspace Subspace::span(std::size_t ambient_dim, const Matrix& spanning_rows) {
  if (spanning_rows.rows() > 0 && spanning_rows.cols() != ambient_dim) {
    throw std::invalid_argument("Subspace::span: vector length does not match ambient dimension");
  }
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = Matrix(0, ambient_dim);
  if (spanning_rows.rows() == 0) return s;
  const auto r = rref(spanning_rows);
  for (std::size_t i = 0; i < r.rank; ++i) s.basis_.append_row(r.reduced.row(i));
  s.pivots_ = r.pivots;
  return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  return span(ambient_dim, Matrix::from_rows(vectors, ambient_dim));
}

Subspace Subspace::zero(std::size_t ambient_dim) { return span(ambient_dim, Matrix(0, ambient_dim)); }

Subspace Subspace::whole(std::size_t ambient_dim) { return span(ambient_dim, Matrix::identity(ambient_dim)); }

Subspace Subspace::coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices) {
  std::vector<Vector> vs;
  for (auto i : indices) vs.push_back(unit_vector(ambient_dim, i));
  return span(ambient_dim, vs);
}

bool Subspace::contains_vector(const Vector& v) const {
  if (v.size() != ambient_dim_) throw std::invalid_argument("contains_vector: dimension mismatch");
  // Reduce v against the RREF basis.
  Vector w = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Rational f = w[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t c = 0; c < ambient_dim_; ++c) {
      if (basis_(i, c) != 0) w[c] -= f * basis_(i, c);
    }
  }
  return relcr::is_zero(w);
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim_ != b.ambient_dim_) return a.ambient_dim_ < b.ambient_dim_;
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return a.basis_ < b.basis_;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return Subspace::span(a.ambient_dim(), vstack(a.basis(), b.basis()));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  const std::size_t n = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace::zero(n);
  // Solve sum alpha_i a_i - sum beta_j b_j = 0; the kernel's alpha part
  // spans the intersection.
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  Matrix system(n, da + db);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < da; ++k) system(i, k) = a.basis()(k, i);
    for (std::size_t k = 0; k < db; ++k) system(i, da + k) = -b.basis()(k, i);
  }
  const Matrix ker = kernel(system);
  std::vector<Vector> vs;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    Vector v(n);
    for (std::size_t k = 0; k < da; ++k) {
      if (ker(r, k) == 0) continue;
      for (std::size_t c = 0; c < n; ++c) v[c] += ker(r, k) * a.basis()(k, c);
    }
    vs.push_back(std::move(v));
  }
  return Subspace::span(n, vs);
}

bool subspace_contains(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (b.dim() > a.dim()) return false;
  for (std::size_t r = 0; r < b.dim(); ++r) {
    if (!a.contains_vector(b.basis().row(r))) return false;
  }
  return true;
}

bool are_complements(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return a.dim() + b.dim() == a.ambient_dim() && subspace_sum(a, b).is_whole();
}

Subspace image_under_unchecked(const Matrix& g, const Subspace& s) {
  if (g.rows() != s.ambient_dim() || g.cols() != s.ambient_dim()) {
    throw std::invalid_argument("image_under: matrix size does not match ambient dimension");
  }
  std::vector<Vector> vs;
  vs.reserve(s.dim());
  for (std::size_t r = 0; r < s.dim(); ++r) vs.push_back(g.apply(s.basis().row(r)));
  return Subspace::span(s.ambient_dim(), vs);
}

Subspace image_under(const Matrix& g, const Subspace& s) {
  if (!is_invertible(g)) throw std::invalid_argument("image_under: singular matrix");
  return image_under_unchecked(g, s);
}

bool is_stable_under(const Matrix& g, const Subspace& s) {
  for (std::size_t r = 0; r < s.dim(); ++r) {
    if (!s.contains_vector(g.apply(s.basis().row(r)))) return false;
  }
  return true;
}

Subspace annihilator(const Subspace& s) {
  return Subspace::span(s.ambient_dim(), kernel(s.basis()));
}

Subspace coordinate_complement(const Subspace& s) {
  std::vector<bool> pivot(s.ambient_dim(), false);
  for (auto p : s.pivots()) pivot[p] = true;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.ambient_dim(); ++i) {
    if (!pivot[i]) idx.push_back(i);
  }
  return Subspace::coordinate(s.ambient_dim(), idx);
}

}  // namespace relcr
