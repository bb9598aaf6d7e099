#include "lef/matrix.hpp"

#include "lef/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace lef {

namespace mp = boost::multiprecision;

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_col(j, columns[j]);
  return m;
}

Matrix Matrix::diagonal(const Vector& entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Vector Matrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void Matrix::set_col(std::size_t j, const Vector& v) {
  if (v.size() != rows_) throw DimensionMismatch("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select(std::span<const std::size_t> row_ids,
                      std::span<const std::size_t> col_ids) const {
  Matrix m(row_ids.size(), col_ids.size());
  for (std::size_t i = 0; i < row_ids.size(); ++i)
    for (std::size_t j = 0; j < col_ids.size(); ++j) m(i, j) = (*this)(row_ids[i], col_ids[j]);
  return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> col_ids) const {
  Matrix m(rows_, col_ids.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < col_ids.size(); ++j) m(i, j) = (*this)(i, col_ids[j]);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("matrix sum shape");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatch("matrix difference shape");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matrix product " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector product");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (v[k] != 0 && a(i, k) != 0) out[i] += a(i, k) * v[k];
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack row count");
  Matrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack column count");
  Matrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

RrefResult rref(const Matrix& m) {
  RrefResult out{m, {}, 0};
  Matrix& a = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(row, j));
    const Scalar inv = 1 / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Scalar factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (a(row, j) != 0) a(i, j) -= factor * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = out.pivots.size();
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Scalar det(const Matrix& m) {
  if (!m.is_square())
    throw NonSquare("determinant of a " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + " matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;

  // Clear denominators row by row, then run integer Bareiss.
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) l = mp::lcm(l, Integer(mp::denominator(m(i, j))));
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = mp::numerator(m(i, j)) * (l / mp::denominator(m(i, j)));
    scale *= l;
  }

  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return Scalar(Integer(sign * a[n - 1][n - 1]), scale);
}

Scalar trace(const Matrix& m) {
  if (!m.is_square()) throw NonSquare("trace of a non-square matrix");
  Scalar t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw NonSquare("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RrefResult r = rref(hstack(m, Matrix::identity(n)));
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) throw Singular("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

SubspaceBasis::SubspaceBasis(std::size_t ambient, Matrix columns)
    : ambient_dim(ambient), vectors(std::move(columns)) {
  if (vectors.rows() != ambient_dim) throw DimensionMismatch("subspace vectors have wrong length");
}

SubspaceBasis kernel(const Matrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> cols;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, free);
    cols.push_back(std::move(v));
  }
  return {m.cols(), Matrix::from_columns(m.cols(), cols)};
}

SubspaceBasis span(std::size_t ambient_dim, const Matrix& columns) {
  if (columns.rows() != ambient_dim) throw DimensionMismatch("span: vector length");
  const RrefResult r = rref(columns.transpose());
  Matrix basis(ambient_dim, r.rank);
  for (std::size_t j = 0; j < r.rank; ++j)
    for (std::size_t i = 0; i < ambient_dim; ++i) basis(i, j) = r.reduced(j, i);
  return {ambient_dim, std::move(basis)};
}

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim != b.ambient_dim) throw DimensionMismatch("subspace sum: ambient dims");
  return span(a.ambient_dim, hstack(a.vectors, b.vectors));
}

std::optional<Matrix> solve_in_basis(const Matrix& basis, const Matrix& rhs) {
  if (basis.rows() != rhs.rows()) throw DimensionMismatch("solve_in_basis: row count");
  const std::size_t k = basis.cols();
  if (k == 0) {
    if (!rhs.is_zero()) return std::nullopt;
    return Matrix(0, rhs.cols());
  }
  const RrefResult r = rref(hstack(basis, rhs));
  if (r.rank < k || r.pivots[k - 1] != k - 1)
    throw DimensionMismatch("solve_in_basis: basis is not linearly independent");
  if (r.rank > k) return std::nullopt;
  Matrix coords(k, rhs.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) coords(i, j) = r.reduced(i, k + j);
  return coords;
}

bool contains(const SubspaceBasis& space, const Matrix& columns) {
  if (columns.cols() == 0) return true;
  return solve_in_basis(space.vectors, columns).has_value();
}

bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b) {
  return a.ambient_dim == b.ambient_dim && a.dim() == b.dim() && contains(a, b.vectors);
}

QuotientStructure quotient(std::size_t ambient_dim, const SubspaceBasis& sub) {
  if (sub.ambient_dim != ambient_dim)
    throw DimensionMismatch("quotient: subspace lives in dimension " +
                            std::to_string(sub.ambient_dim) + ", expected " +
                            std::to_string(ambient_dim));
  const RrefResult r = rref(sub.vectors.transpose());
  if (r.rank != sub.dim()) throw DimensionMismatch("quotient: subspace basis is dependent");

  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  QuotientStructure q;
  q.ambient_dim = ambient_dim;
  q.sub = sub;
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) q.complement.push_back(j);

  const std::size_t qdim = q.complement.size();
  q.section = Matrix(ambient_dim, qdim);
  for (std::size_t c = 0; c < qdim; ++c) q.section(q.complement[c], c) = 1;

  // Q^ambient = sub (+) span(section); projection = trailing rows of [sub | section]^-1.
  const Matrix full_inv = inverse(hstack(sub.vectors, q.section));
  q.projection = Matrix(qdim, ambient_dim);
  for (std::size_t i = 0; i < qdim; ++i)
    for (std::size_t j = 0; j < ambient_dim; ++j)
      q.projection(i, j) = full_inv(sub.dim() + i, j);
  return q;
}

Vector column_vector(const Matrix& m, std::size_t j) { return m.col(j); }

Matrix as_column(const Vector& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

}  // namespace lef
