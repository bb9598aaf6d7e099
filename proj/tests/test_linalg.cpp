#include "lef/errors.hpp"
#include "lef/matrix.hpp"
#include "lef/scalar.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace lef;
using namespace lef::testing;

TEST_CASE("scalars print canonically and parse strictly") {
  CHECK(to_string(Scalar(6, 4)) == "3/2");
  CHECK(to_string(Scalar(-4, 2)) == "-2");
  CHECK(to_string(Scalar(0)) == "0");
  CHECK(parse_scalar("-6/4") == Scalar(-3, 2));
  CHECK(parse_scalar("17") == Scalar(17));
  CHECK(parse_scalar("123456789012345678901234567890") * 2 == parse_scalar("246913578024691357802469135780"));
  for (const char* bad : {"1/0", "", "1/", "/2", "1.5", "a", "1/-2", " 1", "--1", "1/2/3"})
    CHECK_THROWS_AS(parse_scalar(bad), ParseError);

  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Scalar s = random_scalar(rng, 1000, 1000);
    CHECK(parse_scalar(to_string(s)) == s);
  }
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  std::mt19937 rng(11);
  for (std::size_t n = 0; n <= 6; ++n)
    for (int t = 0; t < 15; ++t) {
      const Matrix m = random_matrix(rng, n, n, 5, 4);
      CHECK(det(m) == leibniz_det(m));
    }
  CHECK(det(Matrix{{0, 1}, {1, 0}}) == -1);
  CHECK(det(Matrix(0, 0)) == 1);
  CHECK_THROWS_AS(det(Matrix(2, 3)), NonSquare);
}

TEST_CASE("determinant is multiplicative and inverse is two-sided") {
  std::mt19937 rng(12);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 5;
    const Matrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    CHECK(det(a * b) == det(a) * det(b));
    const Matrix c = random_invertible(rng, n);
    CHECK(c * inverse(c) == Matrix::identity(n));
    CHECK(inverse(c) * c == Matrix::identity(n));
  }
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), Singular);
}

TEST_CASE("rank, kernel and image are consistent") {
  std::mt19937 rng(13);
  for (int t = 0; t < 40; ++t) {
    const std::size_t rows = 1 + t % 4, cols = 1 + (t / 4) % 5;
    const std::size_t r = t % (std::min(rows, cols) + 1);
    const Matrix m = r == 0 ? Matrix(rows, cols) : random_of_rank(rng, rows, cols, r);
    CHECK(rank(m) == r);
    CHECK(naive_rank(m) == r);
    const SubspaceBasis k = kernel(m);
    CHECK(k.dim() == cols - r);
    CHECK((m * k.vectors).is_zero());
    CHECK(rank(k.vectors) == k.dim());
    const SubspaceBasis im = image(m);
    CHECK(im.dim() == r);
    CHECK(contains(im, m));
  }
}

TEST_CASE("rref is reduced and keeps the row space") {
  std::mt19937 rng(14);
  for (int t = 0; t < 20; ++t) {
    const Matrix m = random_of_rank(rng, 4, 5, 1 + t % 4);
    const RrefResult r = rref(m);
    CHECK(r.rank == rank(m));
    for (std::size_t i = 0; i < r.rank; ++i) {
      const std::size_t p = r.pivots[i];
      for (std::size_t j = 0; j < r.reduced.rows(); ++j) CHECK(r.reduced(j, p) == (i == j ? 1 : 0));
    }
    CHECK(rank(vstack(m, r.reduced)) == r.rank);
  }
}

TEST_CASE("quotient section and projection split the ambient space") {
  std::mt19937 rng(15);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 4;
    const SubspaceBasis sub = span(n, random_of_rank(rng, n, 3, 1 + t % std::min<std::size_t>(n, 3)));
    const QuotientStructure q = quotient(n, sub);
    CHECK(q.dim() + sub.dim() == n);
    CHECK(q.projection * q.section == Matrix::identity(q.dim()));
    CHECK((q.projection * sub.vectors).is_zero());
    CHECK(det(hstack(sub.vectors, q.section)) != 0);
  }
}

TEST_CASE("solve_in_basis finds coordinates or reports the escape") {
  const Matrix basis{{1, 0}, {1, 1}, {0, 1}};
  const auto c = solve_in_basis(basis, Matrix{{2}, {5}, {3}});
  REQUIRE(c);
  CHECK(*c == Matrix{{2}, {3}});
  CHECK_FALSE(solve_in_basis(basis, Matrix{{1}, {0}, {0}}));
}

TEST_CASE("subspace sums and equality") {
  const SubspaceBasis a = span(3, Matrix{{1}, {0}, {0}});
  const SubspaceBasis b = span(3, Matrix{{1}, {1}, {0}});
  const SubspaceBasis s = subspace_sum(a, b);
  CHECK(s.dim() == 2);
  CHECK(same_subspace(s, span(3, Matrix{{1, 0}, {0, 1}, {0, 0}})));
  CHECK_FALSE(same_subspace(a, b));
}

TEST_CASE("block constructions") {
  const Matrix a{{1, 2}, {3, 4}}, b{{5}};
  const Matrix d = block_diag(a, b);
  CHECK(d == Matrix{{1, 2, 0}, {3, 4, 0}, {0, 0, 5}});
  CHECK(det(d) == det(a) * det(b));
  const Matrix k = kron(a, Matrix::identity(2));
  CHECK(k.rows() == 4);
  CHECK(k(2, 0) == 3);
  CHECK(k(3, 1) == 3);
  CHECK(trace(kron(a, a)) == trace(a) * trace(a));
  CHECK_THROWS_AS(a * Matrix(3, 1), DimensionMismatch);
}
