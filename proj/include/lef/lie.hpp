#pragma once

#include "lef/dga.hpp"
#include "lef/errors.hpp"
#include "lef/exterior.hpp"
#include "lef/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lef {

/// One structure constant c_{ij}^k, meaning [X_i, X_j] contains c X_k. Only i < j.
struct BracketTerm {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Scalar coeff;
};

/// Finite-dimensional Lie algebra over Q given by structure constants in a
/// fixed basis X_0, ..., X_{n-1}.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::vector<std::string> basis_names, const std::vector<BracketTerm>& brackets);
  static LieAlgebra abelian(std::size_t n);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  // c_{ij}^k for any i, j (antisymmetric).
  const Scalar& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim() + j) * dim() + k];
  }
  Vector bracket(const Vector& u, const Vector& v) const;
  Vector bracket_basis(std::size_t i, std::size_t j) const;
  // Matrix of ad(u).
  Matrix ad(const Vector& u) const;
  Matrix ad_basis(std::size_t i) const;
  // Sparse i < j terms, sorted by (i, j, k).
  std::vector<BracketTerm> terms() const;
  bool is_abelian() const;

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Scalar> c_;
};

class JacobiViolation : public Error {
 public:
  JacobiViolation(std::size_t i, std::size_t j, std::size_t k, Vector defect);
  std::size_t i, j, k;
  Vector defect;
};

// Throws JacobiViolation on the first (i < j < k) triple with nonzero cyclic sum.
void validate(const LieAlgebra& g);
bool is_unimodular(const LieAlgebra& g);
bool is_solvable(const LieAlgebra& g);
bool is_nilpotent(const LieAlgebra& g);

// [g, g] as a subspace of g.
SubspaceBasis derived_subalgebra(const LieAlgebra& g);
// Lie algebra structure on a subalgebra, in the given basis of it.
LieAlgebra restrict_to(const LieAlgebra& g, const SubspaceBasis& sub);

/// The extension 0 -> n -> g -> a -> 0 for an ideal n containing [g, g].
struct ExtensionData {
  LieAlgebra g;
  SubspaceBasis ideal;          // n inside g
  QuotientStructure quotient;   // g -> a = g / n
  LieAlgebra a;                 // abelian
  LieAlgebra nil;               // bracket restricted to n, in the ideal basis
  Matrix adapted_basis;         // columns: ideal basis then section vectors
  std::vector<Matrix> action;   // ad(S_j) restricted to n, in ideal coordinates

  std::size_t ideal_dim() const { return ideal.dim(); }
  std::size_t quotient_dim() const { return quotient.dim(); }
};

/// n = [g, g]. Throws NotSolvable if the derived series does not reach 0.
ExtensionData derived_ideal(const LieAlgebra& g);
/// Extension by an arbitrary ideal containing [g, g] (for example all of g).
ExtensionData extension_by_ideal(const LieAlgebra& g, const SubspaceBasis& ideal);

/// Chevalley-Eilenberg complex on the exterior algebra of g*, with
/// d x^k = - sum_{i<j} c_{ij}^k x^i ^ x^j extended as an antiderivation.
GradedMap ce_differential(const LieAlgebra& g);
DGA ce_dga(const LieAlgebra& g);

/// Lie algebra homomorphism; column j of matrix is the image of source X_j.
struct LieHom {
  LieAlgebra source;
  LieAlgebra target;
  Matrix matrix;
};

class BracketViolation : public Error {
 public:
  BracketViolation(std::size_t i, std::size_t j, Vector defect);
  std::size_t i, j;
  Vector defect;
};

void hom_validate(const LieHom& phi);
LieHom compose(const LieHom& outer, const LieHom& inner);
/// Pullback on cochains, from the exterior algebra of target* to that of source*.
GradedMap pullback(const LieHom& phi);

/// Infinitesimal action of a = g / n on H*(n), one operator per basis vector of a.
struct ActionOnCohomology {
  DGA nil_dga;
  CohomologyRing cohomology;
  std::vector<GradedMap> cochain_operators;  // Lie derivative on the exterior algebra of n*
  std::vector<GradedMap> operators;          // induced on H*(n)
};

ActionOnCohomology action_on_nil_cohomology(const ExtensionData& ext);

enum class SplitStatus { Verified, Unverified };

/// Best-effort complete solvability check: the characteristic polynomial of
/// ad(X) must split over Q for every basis vector and a fixed set of random
/// rational combinations. Unverified means a non-rational root was found or the
/// search was too large, not that g fails the property.
SplitStatus complete_solvability_check(const LieAlgebra& g);

// Coefficients c_0, ..., c_n of det(t I - m), lowest degree first.
std::vector<Scalar> characteristic_polynomial(const Matrix& m);

}  // namespace lef
