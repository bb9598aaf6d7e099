#pragma once

#include "lef/dga.hpp"
#include "lef/errors.hpp"
#include "lef/exterior.hpp"
#include "lef/lie.hpp"
#include "lef/matrix.hpp"

#include <random>
#include <vector>

namespace lef {

/// Decreasing filtration F^0 = C >= F^1 >= ... >= F^pmax >= F^{pmax+1} = 0 of a
/// finite cochain complex (optionally carrying a product).
struct FilteredComplex {
  DGA dga;
  std::size_t pmax = 0;
  std::vector<std::vector<SubspaceBasis>> levels;  // levels[k][p] = F^p C^k, p = 0..pmax

  const CochainComplex& complex() const { return dga.complex; }
  std::size_t top() const { return dga.complex.top(); }
  // F^p C^k for any integer p: everything for p <= 0, zero for p > pmax.
  SubspaceBasis level(std::size_t k, long p) const;
};

// Decreasing, exhaustive, preserved by d, and multiplicative when a product is present.
void check_filtration(const FilteredComplex& fc);

/// Dual basis (nu_1..nu_k, sigma_1..sigma_m) of the adapted basis, as columns in
/// the coordinates of the input basis of g*.
Matrix adapted_dual_basis(const ExtensionData& ext);

/// F^p = span of adapted monomials with at least p sigma factors, i.e. forms
/// that vanish as soon as q + 1 arguments lie in n (p + q = degree).
FilteredComplex hochschild_serre(const ExtensionData& ext);

/// One cell E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}).
struct PageCell {
  std::size_t p = 0;
  std::size_t degree = 0;
  SubspaceBasis z;            // Z_r in ambient coordinates
  QuotientStructure classes;  // in Z coordinates
  Matrix representatives;     // ambient vectors, one per basis class

  std::size_t dim() const { return classes.dim(); }
  long q() const { return static_cast<long>(degree) - static_cast<long>(p); }
  // Class coordinates of ambient vectors lying in Z_r. Throws NotFiltered otherwise.
  Matrix coords(const Matrix& ambient) const;

  Matrix z_rows_inverse;             // inverse of z restricted to z_rows
  std::vector<std::size_t> z_rows;
};

struct SpectralPage {
  std::size_t r = 0;
  std::size_t pmax = 0;
  std::vector<std::vector<PageCell>> cells;          // cells[k][p]
  std::vector<std::vector<Matrix>> differential;     // d_r from cell (p, k) to cell (p + r, k + 1)

  std::size_t top() const { return cells.empty() ? 0 : cells.size() - 1; }
  const PageCell& cell(std::size_t p, std::size_t k) const { return cells.at(k).at(p); }
  std::vector<std::size_t> tot_dims() const;
  // Position of cell (p, k) inside Tot^k (cells ordered by p).
  std::size_t tot_offset(std::size_t k, std::size_t p) const;
  // Ambient representatives of the Tot^k basis.
  Matrix tot_representatives(std::size_t k) const;
  bool differential_is_zero() const;
};

struct PageOptions {
  bool parallel = false;
};

SpectralPage page(const FilteredComplex& fc, std::size_t r, const PageOptions& options = {});
std::vector<SpectralPage> pages(const FilteredComplex& fc, std::size_t last, const PageOptions& options = {});

// d_r o d_r = 0 on every cell. Throws NotAComplex.
void check_page(const SpectralPage& e);

/// Smallest r with d_s = 0 for every s >= r; pages must run up to pmax + 1.
std::size_t stabilization(const std::vector<SpectralPage>& pages);

// f maps the complex of src to the complex of dst, respects d and the filtrations.
void check_filtered_map(const GradedMap& f, const FilteredComplex& src, const FilteredComplex& dst);

/// Matrices of E_r(f) on each cell, indexed [k][p]. Validates the map, the
/// independence of representatives and commutation with d_r.
using PageMap = std::vector<std::vector<Matrix>>;
PageMap induced_page_map(const GradedMap& f, const FilteredComplex& src, const SpectralPage& esrc,
                         const FilteredComplex& dst, const SpectralPage& edst);

GradedMap tot_map(const PageMap& m, const SpectralPage& esrc, const SpectralPage& edst);

// sum over cells of (-1)^{p+q} tr E_r(f).
Scalar tot_alternating_trace(const PageMap& m);

/// Product induced on Tot E_r from the product of the filtered DGA.
ProductTable tot_product(const FilteredComplex& fc, const SpectralPage& e);

/// PD structure of Tot E_r with v = sign * (class of the top form x_1 ^ ... ^ x_n).
PDStructure tot_pd_structure(const FilteredComplex& fc, const SpectralPage& e, int sign = 1);

/// L(Tot E_r(f), Tot E_r(g)) for filtered cochain maps f, g from complex 2 to complex 1.
CoincidenceTrace coincidence_on_page(const GradedMap& f, const GradedMap& g, const FilteredComplex& fc1,
                                     const SpectralPage& e1, const FilteredComplex& fc2,
                                     const SpectralPage& e2, int sign1 = 1, int sign2 = 1);

/// Basis of the space of filtered cochain maps src -> dst.
std::vector<GradedMap> filtered_cochain_map_basis(const FilteredComplex& src, const FilteredComplex& dst);
// Random combination with small integer coefficients.
GradedMap random_combination(const std::vector<GradedMap>& basis, const std::vector<std::size_t>& dims_dst,
                             const std::vector<std::size_t>& dims_src, std::mt19937& rng);

/// The twisted complex built from a* and H*(n) with its action:
/// basis sigma_P (x) h in Tot degree |P| + q, ordered by p, then P (lex), then h;
/// d(sigma_P (x) h) = sum_j sign(j, P) sigma_{j u P} (x) Delta(S_j) h and
/// (sigma_P (x) h)(sigma_P' (x) h') = (-1)^{q p'} sign(P, P') sigma_{P u P'} (x) h h'.
struct TwistedModel {
  std::size_t a_dim = 0;
  std::vector<std::size_t> nil_betti;
  DGA dga;
  std::vector<std::vector<std::size_t>> offsets;  // offsets[k][p] inside Tot^k
  std::vector<Matrix> embedding;                  // Tot^k basis as forms sigma_P ^ rep(h) on g

  // Position inside Tot^{p+q}.
  std::size_t index(std::size_t p, std::size_t q, std::size_t subset_pos, std::size_t h) const;
  std::size_t cell_dim(std::size_t p, std::size_t q) const;
};

TwistedModel twisted_model(const ExtensionData& ext, const ActionOnCohomology& action);

/// The map of twisted models induced by phi_a: a1 -> a2 and H*(phi_n): H*(n2) -> H*(n1),
/// from the model of g2 to the model of g1.
GradedMap twisted_model_map(const TwistedModel& src2, const TwistedModel& dst1, const Matrix& phi_a,
                            const GradedMap& h_phi_n);

/// v = sign * x_1 ^ ... ^ x_n expressed against the top basis vector of the model.
Scalar twisted_model_orientation(const TwistedModel& m, int sign = 1);

}  // namespace lef
