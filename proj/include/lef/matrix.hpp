#pragma once

#include "lef/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace lef {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);
  static Matrix diagonal(const Vector& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector col(std::size_t j) const;
  Vector row(std::size_t i) const;
  void set_col(std::size_t j, const Vector& v);

  bool is_zero() const;
  Matrix transpose() const;

  // Sub-matrix picking the given rows and columns, in the given order.
  Matrix select(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;
  Matrix select_cols(std::span<const std::size_t> col_ids) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Scalar& s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Matrix a, const Scalar& s);
Matrix operator*(const Scalar& s, Matrix a);
Vector operator*(const Matrix& a, const Vector& v);

// [a | b]; both must have the same row count.
Matrix hstack(const Matrix& a, const Matrix& b);
// [a ; b]; both must have the same column count.
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Exact determinant. Rows are scaled to integers and reduced with Bareiss
/// fraction-free elimination. Throws NonSquare.
Scalar det(const Matrix& m);
Scalar trace(const Matrix& m);
Matrix inverse(const Matrix& m);

// Transpose: the matrix of the dual map in dual bases.
inline Matrix dual_map(const Matrix& m) { return m.transpose(); }

/// Linearly independent column vectors spanning a subspace of Q^ambient_dim.
struct SubspaceBasis {
  std::size_t ambient_dim = 0;
  Matrix vectors;  // ambient_dim x dim()

  SubspaceBasis() = default;
  SubspaceBasis(std::size_t ambient, Matrix columns);

  std::size_t dim() const { return vectors.cols(); }
  static SubspaceBasis zero(std::size_t ambient) { return {ambient, Matrix(ambient, 0)}; }
  static SubspaceBasis full(std::size_t ambient) { return {ambient, Matrix::identity(ambient)}; }
};

SubspaceBasis kernel(const Matrix& m);
// Canonical basis (nonzero rows of the rref) of the span of the columns.
SubspaceBasis span(std::size_t ambient_dim, const Matrix& columns);
inline SubspaceBasis image(const Matrix& m) { return span(m.rows(), m); }
SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b);
bool contains(const SubspaceBasis& space, const Matrix& columns);
bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b);

/// Coordinates c with basis * c = rhs, for a full-column-rank basis.
/// Returns nullopt when some column of rhs is outside the span.
std::optional<Matrix> solve_in_basis(const Matrix& basis, const Matrix& rhs);

/// Q^ambient / sub with a pivot-based complement: the section is spanned by
/// the standard basis vectors at the non-pivot positions of sub's rref.
struct QuotientStructure {
  std::size_t ambient_dim = 0;
  SubspaceBasis sub;
  Matrix projection;  // dim() x ambient_dim
  Matrix section;     // ambient_dim x dim()
  std::vector<std::size_t> complement;  // coordinates used by the section

  std::size_t dim() const { return section.cols(); }
};

QuotientStructure quotient(std::size_t ambient_dim, const SubspaceBasis& sub);

Vector column_vector(const Matrix& m, std::size_t j);
Matrix as_column(const Vector& v);

}  // namespace lef
