#pragma once

#include "lef/dga.hpp"
#include "lef/lie.hpp"
#include "lef/matrix.hpp"
#include "lef/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lef {

enum class IdealKind { Derived, Full, Custom };

struct IdealChoice {
  IdealKind kind = IdealKind::Derived;
  Matrix custom;  // columns spanning the ideal, for IdealKind::Custom
};

// The extension for the chosen ideal; the ideal must contain [g, g] and be nilpotent.
ExtensionData extension_for(const LieAlgebra& g, const IdealChoice& choice);

/// Two solvable unimodular Lie algebras of equal dimension with their extensions.
/// Maps go from g1 to g2.
struct SolvPair {
  ExtensionData ext1;
  ExtensionData ext2;
  bool flip1 = false;  // reverse the orientation of g1
  bool flip2 = false;

  const LieAlgebra& g1() const { return ext1.g; }
  const LieAlgebra& g2() const { return ext2.g; }
};

SolvPair make_solv_pair(const LieAlgebra& g1, const LieAlgebra& g2, const IdealChoice& ideal1 = {},
                        const IdealChoice& ideal2 = {}, bool flip1 = false, bool flip2 = false);

/// (Phi_1: n1 -> n2, Phi_2: a1 -> a2) in ideal and quotient coordinates.
struct LinearizationPair {
  LieHom phi_n;
  Matrix phi_a;
  std::optional<LieHom> full;  // the homomorphism g1 -> g2 it came from, if any
};

LinearizationPair linearize_from_hom(const SolvPair& sp, const Matrix& phi);
// Bare pair; phi_n is validated as a homomorphism of the nilradicals.
LinearizationPair make_linearization(const SolvPair& sp, const Matrix& phi_n, const Matrix& phi_a);
LinearizationPair compose(const LinearizationPair& outer, const LinearizationPair& inner);

/// Both sides of H*(Phi_1) o Delta_2(Phi_2 V) = Delta_1(V) o H*(Phi_1) per basis vector V of a1.
struct EquivarianceFailure {
  std::size_t basis_index = 0;
  std::size_t degree = 0;
  Matrix defect;  // left side minus right side
};

struct EquivarianceReport {
  bool ok = true;
  std::vector<EquivarianceFailure> failures;
  bool e1_cochain_map = true;  // the induced map of twisted models commutes with the differentials
  std::string detail;
};

/// Shared per-pair data: actions of a_i on H*(n_i) and the twisted models.
struct PairContext {
  ActionOnCohomology action1;
  ActionOnCohomology action2;
  TwistedModel model1;
  TwistedModel model2;
};

PairContext make_context(const SolvPair& sp);

// H*(Phi_1): H*(n2) -> H*(n1).
GradedMap nil_cohomology_map(const PairContext& ctx, const LinearizationPair& lp);

EquivarianceReport equivariance_check(const SolvPair& sp, const PairContext& ctx, const LinearizationPair& lp);

/// det(A - B) with A = diag(Phi_1, Phi_2) in the (n, a) block order, normalized
/// to the input orientations of g1 and g2.
struct DetFormula {
  Matrix a;
  Matrix b;
  Scalar block_det;  // det(A - B) in adapted coordinates
  Scalar value;
};

DetFormula det_formula(const SolvPair& sp, const LinearizationPair& f, const LinearizationPair& g);

struct RouteOptions {
  bool e2 = true;
  bool direct = true;
  bool parallel = false;
};

struct MainResult {
  DetFormula det;
  std::optional<CoincidenceTrace> e2;
  std::optional<CoincidenceTrace> direct;
  std::vector<std::size_t> e2_dims1;  // Tot E_2 dimensions of the twisted model of g1
  std::vector<std::size_t> e2_dims2;
  EquivarianceReport equivariance_f;
  EquivarianceReport equivariance_g;
  bool agreement = true;
  std::string diagnostics;

  const Scalar& det_value() const { return det.value; }
  std::optional<Scalar> e2_value() const { return e2 ? std::optional<Scalar>(e2->value) : std::nullopt; }
  std::optional<Scalar> direct_value() const {
    return direct ? std::optional<Scalar>(direct->value) : std::nullopt;
  }
  Scalar abs_value() const { return det.value < 0 ? Scalar(-det.value) : det.value; }
};

/// Runs the requested routes. The direct route needs full homomorphisms for
/// both maps and is skipped otherwise. Disagreement is reported, not thrown.
MainResult cross_validate(const SolvPair& sp, const LinearizationPair& f, const LinearizationPair& g,
                          const RouteOptions& options = {});

// scale * (class coordinate of top_form) in a one-dimensional top cohomology;
// scale unchanged when the top degree is not one-dimensional.
Scalar top_class_orientation(const CohomologyRing& h, const Matrix& top_form, const Scalar& scale);

}  // namespace lef
