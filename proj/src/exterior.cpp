#include "lef/exterior.hpp"

#include "lef/dga.hpp"
#include "lef/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace lef {

MultiIndex MultiIndex::from_indices(const std::vector<std::size_t>& indices) {
  std::uint32_t mask = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= 32) throw DimensionMismatch("generator index out of range");
    if (k > 0 && indices[k] <= indices[k - 1])
      throw DimensionMismatch("multi-index must be strictly increasing");
    mask |= 1u << indices[k];
  }
  return MultiIndex(mask);
}

std::size_t MultiIndex::degree() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<std::size_t> MultiIndex::indices() const {
  std::vector<std::size_t> out;
  for (std::uint32_t m = mask_; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

bool operator<(MultiIndex a, MultiIndex b) {
  const auto ia = a.indices();
  const auto ib = b.indices();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

WedgeResult wedge_sign(MultiIndex a, MultiIndex b) {
  if (a.mask() & b.mask()) return {0, MultiIndex()};
  // Each pair (i in a, j in b) with i > j is one transposition of the merge.
  std::size_t inversions = 0;
  for (std::uint32_t m = b.mask(); m; m &= m - 1) {
    const int j = std::countr_zero(m);
    const std::uint32_t above = j == 31 ? 0u : (~0u << (j + 1));
    inversions += static_cast<std::size_t>(std::popcount(a.mask() & above));
  }
  return {inversions % 2 ? -1 : 1, MultiIndex(a.mask() | b.mask())};
}

int sort_sign(std::vector<std::size_t> seq) {
  int sign = 1;
  for (std::size_t i = 1; i < seq.size(); ++i)
    for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
      if (seq[j - 1] == seq[j]) return 0;
      std::swap(seq[j - 1], seq[j]);
      sign = -sign;
    }
  return sign;
}

ExteriorBasis::ExteriorBasis(std::size_t n) : n_(n), by_degree_(n + 1) {
  if (n > 20) throw DimensionMismatch("exterior algebra on more than 20 generators");
  const std::uint32_t count = 1u << n;
  position_.resize(count);
  for (std::uint32_t m = 0; m < count; ++m) by_degree_[std::popcount(m)].push_back(MultiIndex(m));
  for (auto& deg : by_degree_) {
    std::sort(deg.begin(), deg.end());
    for (std::size_t i = 0; i < deg.size(); ++i) position_[deg[i].mask()] = i;
  }
}

std::size_t ExteriorBasis::binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

std::vector<std::size_t> ExteriorBasis::dims() const {
  std::vector<std::size_t> d;
  for (const auto& deg : by_degree_) d.push_back(deg.size());
  return d;
}

std::size_t GradedVectorSpace::total() const {
  std::size_t t = 0;
  for (auto d : dims) t += d;
  return t;
}

GradedMap GradedMap::identity(const std::vector<std::size_t>& dims) {
  GradedMap f;
  for (auto d : dims) f.blocks.push_back(Matrix::identity(d));
  return f;
}

GradedMap GradedMap::zero(const std::vector<std::size_t>& target_dims,
                          const std::vector<std::size_t>& source_dims) {
  if (target_dims.size() != source_dims.size()) throw DimensionMismatch("graded zero map: degrees");
  GradedMap f;
  for (std::size_t k = 0; k < source_dims.size(); ++k)
    f.blocks.emplace_back(target_dims[k], source_dims[k]);
  return f;
}

GradedMap compose(const GradedMap& a, const GradedMap& b) {
  if (a.degrees() != b.degrees()) throw DimensionMismatch("graded composition: degree counts");
  GradedMap c;
  for (std::size_t k = 0; k < a.degrees(); ++k) c.blocks.push_back(a[k] * b[k]);
  return c;
}

GradedMap operator+(const GradedMap& a, const GradedMap& b) {
  if (a.degrees() != b.degrees()) throw DimensionMismatch("graded sum: degree counts");
  GradedMap c;
  for (std::size_t k = 0; k < a.degrees(); ++k) c.blocks.push_back(a[k] + b[k]);
  return c;
}

GradedMap operator*(const Scalar& s, GradedMap a) {
  for (auto& b : a.blocks) b *= s;
  return a;
}

GradedMap extend_map(const Matrix& phi) {
  const ExteriorBasis target(phi.rows());
  const ExteriorBasis source(phi.cols());
  const std::size_t top = std::max(phi.rows(), phi.cols());
  GradedMap f;
  for (std::size_t k = 0; k <= top; ++k) {
    const std::size_t r = k <= phi.rows() ? target.dim(k) : 0;
    const std::size_t c = k <= phi.cols() ? source.dim(k) : 0;
    Matrix block(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      const auto rows = target.degree_basis(k)[i].indices();
      for (std::size_t j = 0; j < c; ++j) {
        const auto cols = source.degree_basis(k)[j].indices();
        block(i, j) = det(phi.select(rows, cols));
      }
    }
    f.blocks.push_back(std::move(block));
  }
  return f;
}

GradedMap extend_derivation(const Matrix& d) {
  if (!d.is_square()) throw NonSquare("derivation extension needs an endomorphism");
  const std::size_t n = d.rows();
  const ExteriorBasis basis(n);
  GradedMap out;
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix block(basis.dim(k), basis.dim(k));
    for (std::size_t col = 0; col < basis.dim(k); ++col) {
      const auto source = basis.degree_basis(k)[col].indices();
      for (std::size_t s = 0; s < source.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i) {
          const Scalar& coeff = d(i, source[s]);
          if (coeff == 0) continue;
          auto seq = source;
          seq[s] = i;
          const int sign = sort_sign(seq);
          if (sign == 0) continue;
          std::sort(seq.begin(), seq.end());
          block(basis.position(MultiIndex::from_indices(seq)), col) += sign * coeff;
        }
      }
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

Scalar graded_lefschetz(const GradedMap& f) {
  Scalar total = 0;
  for (std::size_t k = 0; k < f.degrees(); ++k) {
    if (!f[k].is_square())
      throw NonSquare("graded Lefschetz number: block in degree " + std::to_string(k) +
                      " is not square");
    const Scalar t = trace(f[k]);
    total += k % 2 ? Scalar(-t) : t;
  }
  return total;
}

HlpValues hlp_coincidence(const Matrix& phi_a, const Matrix& psi_b, std::size_t n) {
  if (phi_a.rows() != n || phi_a.cols() != n || psi_b.rows() != n || psi_b.cols() != n)
    throw DimensionMismatch("coincidence formula needs two " + std::to_string(n) + "x" +
                            std::to_string(n) + " matrices");
  const PDStructure pd = pd_check(exterior_product_table(n));
  return {coincidence_number(extend_map(phi_a), extend_map(psi_b), pd, pd), det(phi_a - psi_b)};
}

}  // namespace lef
