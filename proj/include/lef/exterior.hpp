#pragma once

#include "lef/matrix.hpp"

#include <cstdint>
#include <vector>

namespace lef {

/// Strictly increasing set of generator indices, stored as a bitmask.
/// Generators are limited to 32.
class MultiIndex {
 public:
  constexpr MultiIndex() = default;
  constexpr explicit MultiIndex(std::uint32_t mask) : mask_(mask) {}
  static MultiIndex from_indices(const std::vector<std::size_t>& indices);

  std::uint32_t mask() const { return mask_; }
  std::size_t degree() const;
  std::vector<std::size_t> indices() const;
  bool contains(std::size_t i) const { return (mask_ >> i) & 1u; }

  friend bool operator==(MultiIndex, MultiIndex) = default;
  // Lexicographic order on the sorted index lists; only meaningful within a degree.
  friend bool operator<(MultiIndex a, MultiIndex b);

 private:
  std::uint32_t mask_ = 0;
};

struct WedgeResult {
  int sign = 0;  // -1, 0, +1
  MultiIndex result;
};

// e_a ^ e_b = sign * e_result; sign 0 iff a and b share an index.
WedgeResult wedge_sign(MultiIndex a, MultiIndex b);

// Sign of the permutation sorting the sequence, 0 if it has repeats.
int sort_sign(std::vector<std::size_t> sequence);

/// Monomial basis of the exterior algebra on n generators, degree by degree,
/// each degree in lexicographic order.
class ExteriorBasis {
 public:
  explicit ExteriorBasis(std::size_t n);

  std::size_t generators() const { return n_; }
  std::size_t dim(std::size_t degree) const { return by_degree_[degree].size(); }
  std::vector<std::size_t> dims() const;
  const std::vector<MultiIndex>& degree_basis(std::size_t degree) const { return by_degree_[degree]; }
  std::size_t position(MultiIndex m) const { return position_[m.mask()]; }
  static std::size_t binomial(std::size_t n, std::size_t k);

 private:
  std::size_t n_;
  std::vector<std::vector<MultiIndex>> by_degree_;
  std::vector<std::size_t> position_;
};

struct GradedVectorSpace {
  std::vector<std::size_t> dims;
  std::size_t top() const { return dims.empty() ? 0 : dims.size() - 1; }
  std::size_t total() const;
};

/// Degree-preserving linear map; blocks[k] maps source degree k to target degree k.
struct GradedMap {
  std::vector<Matrix> blocks;

  std::size_t degrees() const { return blocks.size(); }
  const Matrix& operator[](std::size_t k) const { return blocks[k]; }
  Matrix& operator[](std::size_t k) { return blocks[k]; }

  static GradedMap identity(const std::vector<std::size_t>& dims);
  static GradedMap zero(const std::vector<std::size_t>& target_dims,
                        const std::vector<std::size_t>& source_dims);

  friend bool operator==(const GradedMap&, const GradedMap&) = default;
};

// Degreewise composition a o b.
GradedMap compose(const GradedMap& a, const GradedMap& b);
GradedMap operator+(const GradedMap& a, const GradedMap& b);
GradedMap operator*(const Scalar& s, GradedMap a);

/// Functorial extension of a linear map to exterior algebras: the degree-k
/// block holds the k x k minors of phi, rows and columns in lexicographic
/// MultiIndex order. phi may be rectangular.
GradedMap extend_map(const Matrix& phi);

/// Extension of an endomorphism D of V as a degree-0 derivation of the
/// exterior algebra: e_J -> sum_s e_j1 ^ ... ^ D e_js ^ ...
GradedMap extend_derivation(const Matrix& d);

/// L(f) = sum_k (-1)^k tr f_k. Throws NonSquare if a block is not square.
Scalar graded_lefschetz(const GradedMap& f);

/// Both sides of the coincidence formula for exterior algebras on Q^n:
/// lhs is the Poincare-duality coincidence number L(^A, ^B) with zero
/// differential, rhs is det(A - B).
struct HlpValues {
  Scalar lhs;
  Scalar rhs;
};

HlpValues hlp_coincidence(const Matrix& phi_a, const Matrix& psi_b, std::size_t n);

}  // namespace lef
