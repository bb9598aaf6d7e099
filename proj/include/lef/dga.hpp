#pragma once

#include "lef/errors.hpp"
#include "lef/exterior.hpp"
#include "lef/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lef {

/// Finite cochain complex concentrated in degrees 0..top.
struct CochainComplex {
  std::vector<std::size_t> dims;
  std::vector<Matrix> d;  // d[k]: dims[k+1] x dims[k]; d[top] maps into the zero space

  std::size_t top() const { return dims.empty() ? 0 : dims.size() - 1; }
  std::size_t dim(std::size_t k) const { return k < dims.size() ? dims[k] : 0; }

  static CochainComplex zero_differential(const std::vector<std::size_t>& dims);
  static CochainComplex from_blocks(const std::vector<std::size_t>& dims, std::vector<Matrix> d);
};

// Throws NotAComplex on shape errors or d o d != 0.
void check_complex(const CochainComplex& c);

/// Bilinear degree-respecting multiplication on a graded space.
/// blocks[i][j] has shape dims[i+j] x (dims[i] * dims[j]); column a * dims[j] + b
/// holds the coordinates of e_a * e_b. Blocks with i + j > top are empty.
struct ProductTable {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Matrix>> blocks;

  std::size_t top() const { return dims.empty() ? 0 : dims.size() - 1; }
  bool empty() const { return blocks.empty(); }
  Vector multiply(std::size_t i, const Vector& a, std::size_t j, const Vector& b) const;
  Vector basis_product(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const;
};

ProductTable exterior_product_table(std::size_t n);

struct DGA {
  CochainComplex complex;
  ProductTable product;
};

// d o d = 0, Leibniz rule and graded commutativity on all basis pairs.
void validate_dga(const DGA& a);

struct CohomologyDegree {
  SubspaceBasis cocycles;
  SubspaceBasis coboundaries;
  QuotientStructure classes;  // cocycle coordinates -> class coordinates
  Matrix representatives;     // dims[k] x b_k, cocycles projecting to the class basis
};

struct CohomologyRing {
  std::vector<CohomologyDegree> degrees;
  std::optional<ProductTable> product;

  std::vector<std::size_t> betti() const;
  std::size_t top() const { return degrees.empty() ? 0 : degrees.size() - 1; }
  // Class coordinates of cocycles (as columns). Throws NotAComplex if a column is not a cocycle.
  Matrix classes_of(std::size_t k, const Matrix& cocycles) const;
};

/// b_k = dim ker d_k - rank d_{k-1}; representatives come from the pivot-based
/// complement of the coboundaries inside the cocycles.
CohomologyRing cohomology(const CochainComplex& c);
// Same, plus the product induced on representatives.
CohomologyRing cohomology(const DGA& a);

// Throws NotCochainMap if d_dst f != f d_src or shapes are off.
void check_cochain_map(const GradedMap& f, const CochainComplex& src, const CochainComplex& dst);

/// H*(f): H*(src) -> H*(dst) in the representative bases.
GradedMap induced_map(const GradedMap& f, const CochainComplex& src, const CohomologyRing& hsrc,
                      const CochainComplex& dst, const CohomologyRing& hdst);

enum class PdAxiom { Bottom, Top, Pairing, Differential };

std::string to_string(PdAxiom axiom);

class NotPD : public Error {
 public:
  NotPD(PdAxiom axiom, std::size_t degree, const std::string& what)
      : Error(what), axiom_(axiom), degree_(degree) {}
  PdAxiom axiom() const { return axiom_; }
  std::size_t degree() const { return degree_; }

 private:
  PdAxiom axiom_;
  std::size_t degree_;
};

/// Poincare duality data of a graded algebra with formal top degree n.
/// The orientation class is v = orientation * (the basis vector of A^n), and
/// pairing[i](a, b) is the coefficient of e_a * e_b in v for e_a in A^i,
/// e_b in A^{n-i}.
struct PDStructure {
  std::vector<std::size_t> dims;
  std::size_t top = 0;
  Scalar orientation = 1;
  std::vector<Matrix> pairing;
};

PDStructure pd_check(const ProductTable& algebra, const Scalar& orientation = 1);
// Adds dA^0 = 0 and dA^{n-1} = 0.
PDStructure pd_check(const DGA& a, const Scalar& orientation = 1);
PDStructure pd_check(const CohomologyRing& h, const Scalar& orientation = 1);

/// Global sign applied to the alternating theta trace so that exterior
/// algebras give L(^A, ^B) = det(A - B). The uncorrected trace is det(B - A).
int coincidence_sign(std::size_t top);

struct CoincidenceTrace {
  std::vector<Matrix> theta;   // theta^i on A_2^i
  std::vector<Scalar> traces;  // tr theta^i
  Scalar value;                // coincidence_sign(n) * sum_i (-1)^i tr theta^i
};

/// f, g: A_2 -> A_1 (pullbacks). theta^i = D^i(g) o f^i where D^i(g): A_1^i -> A_2^i
/// is the transpose of g^{n-i} transported through the two dualities.
CoincidenceTrace coincidence(const GradedMap& f, const GradedMap& g, const PDStructure& pd1,
                             const PDStructure& pd2);

inline Scalar coincidence_number(const GradedMap& f, const GradedMap& g, const PDStructure& pd1,
                                 const PDStructure& pd2) {
  return coincidence(f, g, pd1, pd2).value;
}

}  // namespace lef
