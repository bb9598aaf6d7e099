#include "lef/exterior.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace lef;
using namespace lef::testing;

namespace {

MultiIndex idx(std::initializer_list<std::size_t> i) { return MultiIndex::from_indices(i); }

// Coefficient of e_J in (phi e_{I_1}) ^ ... ^ (phi e_{I_k}) by direct expansion.
Scalar minor_by_expansion(const Matrix& phi, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix sub(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) sub(a, b) = phi(rows[a], cols[b]);
  return leibniz_det(sub);
}

}  // namespace

TEST_CASE("wedge signs") {
  CHECK(wedge_sign(idx({0}), idx({1})).sign == 1);
  CHECK(wedge_sign(idx({1}), idx({0})).sign == -1);
  CHECK(wedge_sign(idx({0, 2}), idx({1})).sign == -1);
  CHECK(wedge_sign(idx({0, 1}), idx({1, 2})).sign == 0);
  CHECK(wedge_sign(idx({1}), idx({0, 2})).result == idx({0, 1, 2}));
  CHECK(sort_sign({2, 0, 1}) == 1);
  CHECK(sort_sign({1, 0}) == -1);
  CHECK(sort_sign({1, 1}) == 0);
}

TEST_CASE("wedge is associative and graded commutative on monomials") {
  for (std::uint32_t a = 0; a < 32; ++a)
    for (std::uint32_t b = 0; b < 32; ++b) {
      const MultiIndex ma(a), mb(b);
      const auto ab = wedge_sign(ma, mb), ba = wedge_sign(mb, ma);
      const int expected = (ma.degree() * mb.degree()) % 2 ? -ab.sign : ab.sign;
      CHECK(ba.sign == expected);
      for (std::uint32_t c = 0; c < 32; c += 5) {
        const MultiIndex mc(c);
        const auto left = wedge_sign(ab.result, mc), right = wedge_sign(mb, mc);
        const auto right2 = wedge_sign(ma, right.result);
        CHECK(ab.sign * left.sign == right.sign * right2.sign);
      }
    }
}

TEST_CASE("basis is lexicographic with binomial dimensions") {
  const ExteriorBasis b(5);
  for (std::size_t k = 0; k <= 5; ++k) {
    CHECK(b.dim(k) == ExteriorBasis::binomial(5, k));
    const auto& basis = b.degree_basis(k);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(b.position(basis[i]) == i);
      CHECK(basis[i].indices() == subsets(5, k)[i]);
    }
  }
}

TEST_CASE("extend_map blocks are minors") {
  std::mt19937 rng(21);
  for (int t = 0; t < 10; ++t) {
    const std::size_t rows = 1 + t % 4, cols = 1 + (t / 2) % 4;
    const Matrix phi = random_matrix(rng, rows, cols);
    const GradedMap e = extend_map(phi);
    for (std::size_t k = 0; k <= std::min(rows, cols); ++k) {
      const auto rs = subsets(rows, k), cs = subsets(cols, k);
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) CHECK(e[k](i, j) == minor_by_expansion(phi, rs[i], cs[j]));
    }
  }
}

TEST_CASE("extend_map is functorial") {
  std::mt19937 rng(22);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 1 + t % 4;
    const Matrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    CHECK(extend_map(a * b) == compose(extend_map(a), extend_map(b)));
    CHECK(extend_map(a)[n] == Matrix{{det(a)}});
  }
  CHECK(extend_map(Matrix::identity(3)) == GradedMap::identity({1, 3, 3, 1}));
}

TEST_CASE("graded Lefschetz number of an extension is det(I - A)") {
  std::mt19937 rng(23);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 1 + t % 5;
    const Matrix a = random_matrix(rng, n, n);
    CHECK(graded_lefschetz(extend_map(a)) == leibniz_det(Matrix::identity(n) - a));
  }
}

TEST_CASE("extend_derivation is the derivative of extend_map") {
  // The degree-k block of extend_map(I + tD) is a polynomial of degree <= k in t.
  // Its linear coefficient, read off by Lagrange interpolation at t = 0..k, must
  // be the derivation.
  std::mt19937 rng(24);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 3;
    const Matrix d = random_matrix(rng, n, n);
    const GradedMap der = extend_derivation(d);
    for (std::size_t k = 0; k <= n; ++k) {
      Matrix linear(der[k].rows(), der[k].cols());
      for (long s = 0; s <= static_cast<long>(k); ++s) {
        // l_s'(0) for the Lagrange basis polynomial of node s.
        Scalar weight = 0;
        if (s == 0) {
          for (long m = 1; m <= static_cast<long>(k); ++m) weight -= Scalar(1, m);
        } else {
          weight = Scalar(1, s);
          for (long m = 1; m <= static_cast<long>(k); ++m)
            if (m != s) weight *= Scalar(-m) / Scalar(s - m);
        }
        linear += weight * extend_map(Matrix::identity(n) + Scalar(s) * d)[k];
      }
      CHECK(linear == der[k]);
    }
  }
}

TEST_CASE("coincidence on exterior algebras is det(A - B)") {
  std::mt19937 rng(25);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 4;
    const Matrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    const HlpValues v = hlp_coincidence(a, b, n);
    CHECK(v.lhs == v.rhs);
    CHECK(v.rhs == leibniz_det(a - b));
  }
}
