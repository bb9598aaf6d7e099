#pragma once

// Fixtures, random generators and small independent oracles shared by the tests.

#include "lef/exterior.hpp"
#include "lef/lie.hpp"
#include "lef/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace lef::testing {

inline LieAlgebra heisenberg3() { return LieAlgebra({"X", "Y", "Z"}, {{0, 1, 2, 1}}); }

inline LieAlgebra sol3() { return LieAlgebra({"X", "Y", "Z"}, {{0, 1, 1, 1}, {0, 2, 2, -1}}); }

inline LieAlgebra sol4() {
  return LieAlgebra({"X", "Y", "Z", "W"}, {{0, 1, 1, 1}, {0, 2, 2, -1}, {1, 2, 3, 1}});
}

inline LieAlgebra heisenberg5() {
  return LieAlgebra({"X1", "Y1", "X2", "Y2", "Z"}, {{0, 1, 4, 1}, {2, 3, 4, 1}});
}

// [X, Y] = Y: solvable but not unimodular.
inline LieAlgebra affine2() { return LieAlgebra({"X", "Y"}, {{0, 1, 1, 1}}); }

// Euclidean motions of the plane: solvable, unimodular, not completely solvable.
inline LieAlgebra euclidean3() { return LieAlgebra({"X", "Y", "Z"}, {{0, 1, 2, 1}, {0, 2, 1, -1}}); }

inline Scalar random_scalar(std::mt19937& rng, int num = 3, int den = 3) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  return Scalar(n(rng), d(rng));
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int num = 3, int den = 3) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(rng, num, den);
  return m;
}

inline Matrix random_invertible(std::mt19937& rng, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, n, n);
    if (det(m) != 0) return m;
  }
}

// Random matrix of the given rank.
inline Matrix random_of_rank(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  for (;;) {
    Matrix m = random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
    if (rank(m) == r) return m;
  }
}

// Random endomorphisms of the sample algebras, from their explicit parametrizations.
inline Matrix random_h3_hom(std::mt19937& rng) {
  Matrix m = random_matrix(rng, 3, 3);
  m(0, 2) = m(1, 2) = 0;
  m(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m;
}

inline Matrix random_sol3_hom(std::mt19937& rng) {
  const Scalar u = random_scalar(rng), v = random_scalar(rng), a = random_scalar(rng), b = random_scalar(rng);
  switch (rng() % 3) {
    case 0:  // X -> X + uY + vZ, Y -> aY, Z -> bZ
      return Matrix{{1, 0, 0}, {u, a, 0}, {v, 0, b}};
    case 1:  // X -> -X + uY + vZ, Y -> aZ, Z -> bY
      return Matrix{{-1, 0, 0}, {u, 0, b}, {v, a, 0}};
    default:  // Y, Z -> 0
      return Matrix{{a, 0, 0}, {u, 0, 0}, {v, 0, 0}};
  }
}

inline Matrix random_sol4_hom(std::mt19937& rng) {
  const Scalar u = random_scalar(rng), v = random_scalar(rng), w = random_scalar(rng);
  const Scalar a = random_scalar(rng), b = random_scalar(rng);
  // X -> X + uY + vZ + wW, Y -> aY - avW, Z -> bZ - ubW, W -> abW
  return Matrix{{1, 0, 0, 0}, {u, a, 0, 0}, {v, 0, b, 0}, {w, -a * v, -u * b, a * b}};
}

// Sign of a permutation given as a sequence of distinct integers, by counting inversions.
inline int permutation_sign(const std::vector<std::size_t>& seq) {
  int inversions = 0;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

// Determinant by the Leibniz expansion.
inline Scalar leibniz_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total = 0;
  do {
    Scalar term = permutation_sign(perm);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Rank by plain Gaussian elimination with the first nonzero pivot.
inline std::size_t naive_rank(Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(pivot, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const Scalar factor = m(i, c) / m(r, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    ++r;
  }
  return r;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Chevalley-Eilenberg differential from the evaluation formula
///   (d w)(X_0, ..., X_k) = sum_{a<b} (-1)^{a+b} w([X_a, X_b], X_0, ..^a..^b.., X_k),
/// with k-forms stored by their values on increasing basis tuples (lex order).
inline std::vector<Matrix> ce_by_evaluation(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  std::vector<Matrix> d;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto src = subsets(n, k);
    const auto dst = subsets(n, k + 1);
    Matrix m(dst.size(), src.size());
    auto position = [&](std::vector<std::size_t> s) {
      return static_cast<std::size_t>(std::find(src.begin(), src.end(), s) - src.begin());
    };
    for (std::size_t row = 0; row < dst.size(); ++row) {
      const auto& t = dst[row];
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b) {
          const int outer = (a + b) % 2 ? -1 : 1;
          std::vector<std::size_t> rest;
          for (std::size_t c = 0; c < t.size(); ++c)
            if (c != a && c != b) rest.push_back(t[c]);
          const Vector br = g.bracket_basis(t[a], t[b]);
          for (std::size_t x = 0; x < n; ++x) {
            if (br[x] == 0) continue;
            std::vector<std::size_t> seq{x};
            seq.insert(seq.end(), rest.begin(), rest.end());
            std::vector<std::size_t> sorted = seq;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
            m(row, position(sorted)) += outer * permutation_sign(seq) * br[x];
          }
        }
    }
    d.push_back(m);
  }
  return d;
}

inline std::vector<std::size_t> betti_from(const std::vector<Matrix>& d, std::size_t n) {
  std::vector<std::size_t> b;
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t dim = d[k].cols();
    const std::size_t rank_out = naive_rank(d[k]);
    const std::size_t rank_in = k == 0 ? 0 : naive_rank(d[k - 1]);
    b.push_back(dim - rank_out - rank_in);
  }
  return b;
}

}  // namespace lef::testing
