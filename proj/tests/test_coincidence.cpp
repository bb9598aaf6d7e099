#include "lef/coincidence.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace lef;
using namespace lef::testing;

namespace {

Scalar expected(const Matrix& f, const Matrix& g, bool flip1 = false, bool flip2 = false) {
  Scalar l = leibniz_det(f - g);
  if (flip1 != flip2) l = -l;
  return l;
}

MainResult run(const SolvPair& sp, const Matrix& f, const Matrix& g) {
  return cross_validate(sp, linearize_from_hom(sp, f), linearize_from_hom(sp, g));
}

void check_all_routes(const MainResult& m, const Scalar& value) {
  CHECK(m.equivariance_f.ok);
  CHECK(m.equivariance_g.ok);
  CHECK(m.agreement);
  CHECK(m.det_value() == value);
  REQUIRE(m.e2);
  CHECK(m.e2->value == value);
  REQUIRE(m.direct);
  CHECK(m.direct->value == value);
}

}  // namespace

TEST_CASE("random homomorphism pairs agree on every route") {
  std::mt19937 rng(61);
  struct Family {
    LieAlgebra g;
    Matrix (*hom)(std::mt19937&);
  };
  const std::vector<Family> families{{heisenberg3(), random_h3_hom}, {sol3(), random_sol3_hom}, {sol4(), random_sol4_hom}};
  for (const auto& fam : families) {
    const SolvPair sp = make_solv_pair(fam.g, fam.g);
    for (int t = 0; t < 8; ++t) {
      const Matrix f = fam.hom(rng), g = fam.hom(rng);
      hom_validate({fam.g, fam.g, f});
      hom_validate({fam.g, fam.g, g});
      check_all_routes(run(sp, f, g), expected(f, g));
    }
  }
}

TEST_CASE("sol3 three-route example") {
  const SolvPair sp = make_solv_pair(sol3(), sol3());
  // f = diag(1, c, c') and g = (X -> aX, Y, Z -> 0): L = c c' (1 - a).
  const Matrix f = Matrix::diagonal({1, 2, 3}), g = Matrix::diagonal({2, 0, 0});
  check_all_routes(run(sp, f, g), -6);
}

TEST_CASE("orientation flips change the sign") {
  std::mt19937 rng(62);
  for (int t = 0; t < 4; ++t) {
    const Matrix f = random_sol3_hom(rng), g = random_sol3_hom(rng);
    for (int flips = 0; flips < 4; ++flips) {
      const bool flip1 = flips & 1, flip2 = flips & 2;
      const SolvPair sp = make_solv_pair(sol3(), sol3(), {}, {}, flip1, flip2);
      check_all_routes(run(sp, f, g), expected(f, g, flip1, flip2));
    }
  }
}

TEST_CASE("L(f, f) = 0 and precomposition scales by det") {
  std::mt19937 rng(63);
  const SolvPair sp = make_solv_pair(sol4(), sol4());
  for (int t = 0; t < 4; ++t) {
    const Matrix f = random_sol4_hom(rng), g = random_sol4_hom(rng), h = random_sol4_hom(rng);
    check_all_routes(run(sp, f, f), 0);
    const MainResult base = run(sp, f, g);
    check_all_routes(run(sp, f * h, g * h), base.det_value() * det(h));
    const LinearizationPair lf = linearize_from_hom(sp, f), lh = linearize_from_hom(sp, h);
    const LinearizationPair lfh = compose(lf, lh);
    CHECK(lfh.phi_a == linearize_from_hom(sp, f * h).phi_a);
    CHECK(lfh.phi_n.matrix == linearize_from_hom(sp, f * h).phi_n.matrix);
  }
}

TEST_CASE("torus and nilmanifold cases reduce to the exterior computation") {
  std::mt19937 rng(64);
  for (std::size_t n = 1; n <= 3; ++n) {
    const LieAlgebra t = LieAlgebra::abelian(n);
    const SolvPair sp = make_solv_pair(t, t);
    CHECK(sp.ext1.ideal_dim() == 0);
    for (int s = 0; s < 3; ++s) {
      const Matrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
      const Scalar hl = hlp_coincidence(a, b, n).lhs;
      check_all_routes(run(sp, a, b), hl);
    }
  }
  const IdealChoice full{IdealKind::Full, {}};
  const SolvPair nil = make_solv_pair(heisenberg3(), heisenberg3(), full, full);
  CHECK(nil.ext1.quotient_dim() == 0);
  for (int s = 0; s < 4; ++s) {
    const Matrix f = random_h3_hom(rng), g = random_h3_hom(rng);
    check_all_routes(run(nil, f, g), expected(f, g));
  }
  // h3 automorphism diag(2, 3, 6) against the identity: det diag(1, 2, 5).
  check_all_routes(run(nil, Matrix::diagonal({2, 3, 6}), Matrix::identity(3)), 10);
}

TEST_CASE("bare pairs on sol4") {
  const SolvPair sp = make_solv_pair(sol4(), sol4());
  const LinearizationPair f = make_linearization(sp, Matrix{{0, 3, 0}, {2, 0, 0}, {0, 0, -6}}, Matrix{{-1}});
  const LinearizationPair id = make_linearization(sp, Matrix::identity(3), Matrix{{1}});
  const MainResult m = cross_validate(sp, f, id);
  CHECK(m.equivariance_f.ok);
  CHECK(m.agreement);
  CHECK(m.det_value() == -70);
  REQUIRE(m.e2);
  CHECK(m.e2->value == -70);
  CHECK_FALSE(m.direct);
}

TEST_CASE("the equivariance gate") {
  const SolvPair sp = make_solv_pair(sol3(), sol3());
  const LinearizationPair swap = make_linearization(sp, Matrix{{0, 1}, {1, 0}}, Matrix{{1}});
  const LinearizationPair id = make_linearization(sp, Matrix::identity(2), Matrix{{1}});
  const MainResult m = cross_validate(sp, swap, id);
  CHECK_FALSE(m.equivariance_f.ok);
  REQUIRE_FALSE(m.equivariance_f.failures.empty());
  CHECK(m.equivariance_f.failures.front().degree == 1);
  CHECK(m.equivariance_f.failures.front().basis_index == 0);
  CHECK_FALSE(m.equivariance_f.failures.front().defect.is_zero());
  CHECK_FALSE(m.equivariance_f.e1_cochain_map);
  CHECK(m.equivariance_g.ok);
  CHECK_FALSE(m.e2);
  // With phi_a = -1 the same swap is the linearization of a homomorphism.
  const LinearizationPair ok = make_linearization(sp, Matrix{{0, 1}, {1, 0}}, Matrix{{-1}});
  CHECK(cross_validate(sp, ok, id).equivariance_f.ok);
}

TEST_CASE("inadmissible inputs") {
  CHECK_THROWS_AS(make_solv_pair(affine2(), affine2()), NotUnimodular);
  CHECK_THROWS_AS(make_solv_pair(sol3(), sol4()), DimensionMismatch);
  CHECK_THROWS_AS(make_solv_pair(sol3(), heisenberg3()), DimensionMismatch);
  const IdealChoice line{IdealKind::Custom, Matrix{{1}, {0}}};
  const SolvPair sp = make_solv_pair(LieAlgebra::abelian(2), LieAlgebra::abelian(2), line, line);
  CHECK_THROWS_AS(linearize_from_hom(sp, Matrix{{0, 1}, {1, 0}}), RestrictionEscape);
  const SolvPair s3 = make_solv_pair(sol3(), sol3());
  CHECK_THROWS_AS(linearize_from_hom(s3, Matrix::diagonal({2, 1, 1})), BracketViolation);
  CHECK_THROWS_AS(make_linearization(s3, Matrix::identity(2), Matrix{{1, 0}}), DimensionMismatch);
}

TEST_CASE("parallel routes give the same result") {
  std::mt19937 rng(65);
  const SolvPair sp = make_solv_pair(sol4(), sol4());
  const Matrix f = random_sol4_hom(rng), g = random_sol4_hom(rng);
  const LinearizationPair lf = linearize_from_hom(sp, f), lg = linearize_from_hom(sp, g);
  const MainResult a = cross_validate(sp, lf, lg);
  const MainResult b = cross_validate(sp, lf, lg, {true, true, true});
  CHECK(a.det_value() == b.det_value());
  CHECK(a.e2->traces == b.e2->traces);
  CHECK(a.direct->traces == b.direct->traces);
}
