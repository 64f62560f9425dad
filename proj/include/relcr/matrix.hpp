#pragma once

#include "relcr/rational.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace relcr {

using Vector = std::vector<Rational>;

// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& entries);
  // cols is only consulted when rows is empty.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  std::vector<Vector> row_list() const;
  void append_row(const Vector& v);

  Matrix transpose() const;
  Vector apply(const Vector& v) const;

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(const Rational& s) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix vstack(const Matrix& top, const Matrix& bottom);

Rational dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Vector& v, const Rational& s);
bool is_zero(const Vector& v);
Vector unit_vector(std::size_t n, std::size_t i);

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// Unique reduced row echelon form. Zero rows are kept at the bottom so
// the shape of the input is preserved.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
bool is_invertible(const Matrix& m);

// Rows form a basis of { x : m x = 0 }, in reduced form.
Matrix kernel(const Matrix& m);

// No solution. certificate y satisfies y^T A = 0 and y^T b = 1.
struct EmptySolution {
  Vector certificate;
};

// Solution set = particular + rowspan(homogeneous).
struct AffineSolution {
  Vector particular;
  Matrix homogeneous;

  std::size_t dimension() const { return homogeneous.rows(); }
  Vector point(const Vector& parameters) const;
};

using AffineResult = std::variant<EmptySolution, AffineSolution>;

// Exact solution set of A x = b.
AffineResult solve_affine(const Matrix& a, const Vector& b);

// Independent check of an EmptySolution: y^T A = 0 and y^T b != 0.
bool verify_inconsistency(const Matrix& a, const Vector& b, const Vector& certificate);

}  // namespace relcr
