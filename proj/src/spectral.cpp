#include "lef/spectral.hpp"

#include <algorithm>
#include <future>
#include <string>

namespace lef {

namespace {

std::string deg(std::size_t k) { return std::to_string(k); }

std::size_t sigma_count(MultiIndex m, std::size_t first_sigma) {
  std::size_t c = 0;
  for (auto i : m.indices())
    if (i >= first_sigma) ++c;
  return c;
}

}  // namespace

SubspaceBasis FilteredComplex::level(std::size_t k, long p) const {
  const std::size_t dim = complex().dim(k);
  if (p <= 0) return SubspaceBasis::full(dim);
  if (static_cast<std::size_t>(p) > pmax) return SubspaceBasis::zero(dim);
  return levels.at(k).at(static_cast<std::size_t>(p));
}

void check_filtration(const FilteredComplex& fc) {
  const auto& c = fc.complex();
  if (fc.levels.size() != c.dims.size())
    throw NotFiltered("filtration has " + std::to_string(fc.levels.size()) + " degrees, complex has " +
                      std::to_string(c.dims.size()));
  for (std::size_t k = 0; k < c.dims.size(); ++k) {
    if (fc.levels[k].size() != fc.pmax + 1)
      throw NotFiltered("filtration in degree " + deg(k) + " has the wrong number of steps");
    for (const auto& s : fc.levels[k])
      if (s.ambient_dim != c.dims[k]) throw NotFiltered("filtration step lives in the wrong space");
    if (fc.levels[k][0].dim() != c.dims[k]) throw NotFiltered("F^0 is not everything in degree " + deg(k));
    for (std::size_t p = 0; p < fc.pmax; ++p)
      if (!contains(fc.levels[k][p], fc.levels[k][p + 1].vectors))
        throw NotFiltered("filtration is not decreasing in degree " + deg(k));
    if (k < c.top())
      for (std::size_t p = 1; p <= fc.pmax; ++p)
        if (!contains(fc.level(k + 1, static_cast<long>(p)), c.d[k] * fc.level(k, static_cast<long>(p)).vectors))
          throw NotFiltered("d does not preserve F^" + std::to_string(p) + " in degree " + deg(k));
  }
  if (fc.dga.product.empty()) return;
  const std::size_t top = c.top();
  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t j = 0; i + j <= top; ++j)
      for (std::size_t p = 1; p <= fc.pmax; ++p)
        for (std::size_t pp = 0; pp <= fc.pmax; ++pp) {
          const Matrix a = fc.level(i, static_cast<long>(p)).vectors;
          const Matrix b = fc.level(j, static_cast<long>(pp)).vectors;
          if (a.cols() == 0 || b.cols() == 0) continue;
          std::vector<Vector> products;
          for (std::size_t x = 0; x < a.cols(); ++x)
            for (std::size_t y = 0; y < b.cols(); ++y)
              products.push_back(fc.dga.product.multiply(i, a.col(x), j, b.col(y)));
          if (!contains(fc.level(i + j, static_cast<long>(p + pp)), Matrix::from_columns(c.dims[i + j], products)))
            throw NotFiltered("filtration is not multiplicative on F^" + std::to_string(p) + " x F^" +
                              std::to_string(pp) + " in degrees (" + deg(i) + ", " + deg(j) + ")");
        }
}

Matrix adapted_dual_basis(const ExtensionData& ext) { return inverse(ext.adapted_basis).transpose(); }

FilteredComplex hochschild_serre(const ExtensionData& ext) {
  const std::size_t n = ext.g.dim();
  const std::size_t first_sigma = ext.ideal_dim();
  const ExteriorBasis basis(n);
  const GradedMap to_std = extend_map(adapted_dual_basis(ext));

  FilteredComplex fc;
  fc.dga = ce_dga(ext.g);
  fc.pmax = ext.quotient_dim();
  fc.levels.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t p = 0; p <= fc.pmax; ++p) {
      std::vector<std::size_t> cols;
      for (std::size_t i = 0; i < basis.dim(k); ++i)
        if (sigma_count(basis.degree_basis(k)[i], first_sigma) >= p) cols.push_back(i);
      fc.levels[k].emplace_back(basis.dim(k), to_std[k].select_cols(cols));
    }
  }
  check_filtration(fc);
  return fc;
}

Matrix PageCell::coords(const Matrix& ambient) const {
  std::vector<std::size_t> all(ambient.cols());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  const Matrix c = z_rows_inverse * ambient.select(z_rows, all);
  if (z.vectors * c != ambient)
    throw NotFiltered("vector of degree " + deg(degree) + " does not lie in Z^" + std::to_string(p));
  return classes.projection * c;
}

namespace {

// Z_r^{p} in degree k; r = -1 gives F^p.
SubspaceBasis z_space(const FilteredComplex& fc, long r, long p, std::size_t k) {
  const SubspaceBasis f = fc.level(k, p);
  if (r < 0 || k >= fc.top() || f.dim() == 0) return f;
  const auto& c = fc.complex();
  const SubspaceBasis target = fc.level(k + 1, p + r);
  if (target.dim() == c.dims[k + 1]) return f;
  const Matrix q = quotient(c.dims[k + 1], target).projection;
  const SubspaceBasis kern = kernel(q * c.d[k] * f.vectors);
  return {c.dims[k], f.vectors * kern.vectors};
}

PageCell make_cell(const FilteredComplex& fc, std::size_t r, std::size_t p, std::size_t k) {
  const long rl = static_cast<long>(r);
  const long pl = static_cast<long>(p);
  PageCell cell;
  cell.p = p;
  cell.degree = k;
  cell.z = z_space(fc, rl, pl, k);
  const std::size_t zdim = cell.z.dim();
  cell.z_rows = rref(cell.z.vectors.transpose()).pivots;
  std::vector<std::size_t> all(zdim);
  for (std::size_t j = 0; j < zdim; ++j) all[j] = j;
  cell.z_rows_inverse = zdim ? inverse(cell.z.vectors.select(cell.z_rows, all)) : Matrix(0, 0);

  Matrix boundaries = z_space(fc, rl - 1, pl + 1, k).vectors;
  if (k > 0) boundaries = hstack(boundaries, fc.complex().d[k - 1] * z_space(fc, rl - 1, pl - rl + 1, k - 1).vectors);
  const Matrix b_coords = cell.z_rows_inverse * boundaries.select(cell.z_rows, [&] {
    std::vector<std::size_t> cols(boundaries.cols());
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    return cols;
  }());
  if (cell.z.vectors * b_coords != boundaries)
    throw NotAComplex("boundaries escape Z on cell (" + deg(p) + ", " + deg(k) + ")");
  cell.classes = quotient(zdim, span(zdim, b_coords));
  cell.representatives = cell.z.vectors * cell.classes.section;
  return cell;
}

}  // namespace

std::vector<std::size_t> SpectralPage::tot_dims() const {
  std::vector<std::size_t> dims;
  for (const auto& row : cells) {
    std::size_t t = 0;
    for (const auto& c : row) t += c.dim();
    dims.push_back(t);
  }
  return dims;
}

std::size_t SpectralPage::tot_offset(std::size_t k, std::size_t p) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < p; ++i) off += cells.at(k).at(i).dim();
  return off;
}

Matrix SpectralPage::tot_representatives(std::size_t k) const {
  Matrix out(cells.at(k).empty() ? 0 : cells[k][0].z.ambient_dim, 0);
  for (const auto& c : cells[k]) out = hstack(out, c.representatives);
  return out;
}

bool SpectralPage::differential_is_zero() const {
  for (const auto& row : differential)
    for (const auto& m : row)
      if (!m.is_zero()) return false;
  return true;
}

SpectralPage page(const FilteredComplex& fc, std::size_t r, const PageOptions& options) {
  SpectralPage e;
  e.r = r;
  e.pmax = fc.pmax;
  const std::size_t top = fc.top();
  e.cells.resize(top + 1);
  if (options.parallel) {
    std::vector<std::vector<std::future<PageCell>>> jobs(top + 1);
    for (std::size_t k = 0; k <= top; ++k)
      for (std::size_t p = 0; p <= fc.pmax; ++p)
        jobs[k].push_back(std::async(std::launch::async, [&fc, r, p, k] { return make_cell(fc, r, p, k); }));
    for (std::size_t k = 0; k <= top; ++k)
      for (auto& j : jobs[k]) e.cells[k].push_back(j.get());
  } else {
    for (std::size_t k = 0; k <= top; ++k)
      for (std::size_t p = 0; p <= fc.pmax; ++p) e.cells[k].push_back(make_cell(fc, r, p, k));
  }

  e.differential.resize(top + 1);
  for (std::size_t k = 0; k <= top; ++k)
    for (std::size_t p = 0; p <= fc.pmax; ++p) {
      const PageCell& src = e.cells[k][p];
      if (k == top || p + r > fc.pmax) {
        e.differential[k].emplace_back(0, src.dim());
        continue;
      }
      e.differential[k].push_back(e.cells[k + 1][p + r].coords(fc.complex().d[k] * src.representatives));
    }
  return e;
}

std::vector<SpectralPage> pages(const FilteredComplex& fc, std::size_t last, const PageOptions& options) {
  std::vector<SpectralPage> out;
  for (std::size_t r = 0; r <= last; ++r) out.push_back(page(fc, r, options));
  return out;
}

void check_page(const SpectralPage& e) {
  for (std::size_t k = 0; k + 1 <= e.top(); ++k)
    for (std::size_t p = 0; p + e.r <= e.pmax; ++p) {
      if (k + 1 == e.top() || p + 2 * e.r > e.pmax) continue;
      if (!(e.differential[k + 1][p + e.r] * e.differential[k][p]).is_zero())
        throw NotAComplex("d_" + std::to_string(e.r) + " squares to a nonzero map on cell (" + deg(p) +
                          ", " + deg(k) + ")");
    }
}

std::size_t stabilization(const std::vector<SpectralPage>& pages) {
  std::size_t r = pages.size();
  while (r > 0 && pages[r - 1].differential_is_zero()) --r;
  return r;
}

void check_filtered_map(const GradedMap& f, const FilteredComplex& src, const FilteredComplex& dst) {
  check_cochain_map(f, src.complex(), dst.complex());
  const std::size_t pmax = std::max(src.pmax, dst.pmax);
  for (std::size_t k = 0; k < f.degrees(); ++k)
    for (std::size_t p = 1; p <= pmax; ++p) {
      const long pl = static_cast<long>(p);
      if (!contains(dst.level(k, pl), f[k] * src.level(k, pl).vectors))
        throw NotFiltered("map does not preserve F^" + std::to_string(p) + " in degree " + deg(k));
    }
}

PageMap induced_page_map(const GradedMap& f, const FilteredComplex& src, const SpectralPage& esrc,
                         const FilteredComplex& dst, const SpectralPage& edst) {
  if (esrc.r != edst.r) throw DimensionMismatch("induced page map between different pages");
  check_filtered_map(f, src, dst);
  const std::size_t top = esrc.top();
  const std::size_t pmax = std::min(esrc.pmax, edst.pmax);
  PageMap m(top + 1);
  for (std::size_t k = 0; k <= top; ++k)
    for (std::size_t p = 0; p <= esrc.pmax; ++p) {
      const PageCell& from = esrc.cell(p, k);
      if (p > pmax) {
        // The target filtration stops earlier; anything landing there must vanish.
        m[k].emplace_back(0, from.dim());
        if (!(f[k] * from.representatives).is_zero())
          throw NotFiltered("map does not kill F^" + std::to_string(p) + " in degree " + deg(k));
        continue;
      }
      const PageCell& to = edst.cell(p, k);
      const Matrix boundaries = from.z.vectors * from.classes.sub.vectors;
      if (!to.coords(f[k] * boundaries).is_zero())
        throw NotCochainMap(k, "page map depends on the representative on cell (" + deg(p) + ", " + deg(k) + ")");
      m[k].push_back(to.coords(f[k] * from.representatives));
    }
  for (std::size_t k = 0; k < top; ++k)
    for (std::size_t p = 0; p + esrc.r <= pmax; ++p)
      if (edst.differential[k][p] * m[k][p] != m[k + 1][p + esrc.r] * esrc.differential[k][p])
        throw NotCochainMap(k, "page map does not commute with d_" + std::to_string(esrc.r) + " on cell (" +
                                   deg(p) + ", " + deg(k) + ")");
  return m;
}

GradedMap tot_map(const PageMap& m, const SpectralPage& esrc, const SpectralPage& edst) {
  const auto rows = edst.tot_dims();
  const auto cols = esrc.tot_dims();
  GradedMap out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    Matrix block(rows[k], cols[k]);
    for (std::size_t p = 0; p < m[k].size(); ++p) {
      if (m[k][p].rows() == 0) continue;
      const std::size_t r0 = edst.tot_offset(k, p);
      const std::size_t c0 = esrc.tot_offset(k, p);
      for (std::size_t i = 0; i < m[k][p].rows(); ++i)
        for (std::size_t j = 0; j < m[k][p].cols(); ++j) block(r0 + i, c0 + j) = m[k][p](i, j);
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

Scalar tot_alternating_trace(const PageMap& m) {
  Scalar total = 0;
  for (std::size_t k = 0; k < m.size(); ++k)
    for (const auto& block : m[k]) {
      if (block.rows() == 0 && block.cols() == 0) continue;
      if (!block.is_square()) throw NonSquare("page map block in degree " + deg(k) + " is not square");
      const Scalar t = trace(block);
      total += k % 2 ? Scalar(-t) : t;
    }
  return total;
}

ProductTable tot_product(const FilteredComplex& fc, const SpectralPage& e) {
  if (fc.dga.product.empty()) throw Error("filtered complex carries no product");
  ProductTable table;
  table.dims = e.tot_dims();
  const std::size_t top = e.top();
  table.blocks.resize(top + 1);
  for (std::size_t i = 0; i <= top; ++i) {
    table.blocks[i].resize(top + 1);
    for (std::size_t j = 0; i + j <= top; ++j) {
      Matrix block(table.dims[i + j], table.dims[i] * table.dims[j]);
      for (std::size_t p = 0; p <= e.pmax; ++p)
        for (std::size_t pp = 0; pp <= e.pmax; ++pp) {
          const PageCell& a = e.cell(p, i);
          const PageCell& b = e.cell(pp, j);
          if (a.dim() == 0 || b.dim() == 0) continue;
          std::vector<Vector> products;
          for (std::size_t x = 0; x < a.dim(); ++x)
            for (std::size_t y = 0; y < b.dim(); ++y)
              products.push_back(fc.dga.product.multiply(i, a.representatives.col(x), j, b.representatives.col(y)));
          const Matrix ambient = Matrix::from_columns(fc.complex().dims[i + j], products);
          if (p + pp > e.pmax) {
            if (!ambient.is_zero()) throw NotFiltered("product escapes the filtration");
            continue;
          }
          const Matrix c = e.cell(p + pp, i + j).coords(ambient);
          const std::size_t r0 = e.tot_offset(i + j, p + pp);
          const std::size_t a0 = e.tot_offset(i, p);
          const std::size_t b0 = e.tot_offset(j, pp);
          for (std::size_t x = 0; x < a.dim(); ++x)
            for (std::size_t y = 0; y < b.dim(); ++y)
              for (std::size_t s = 0; s < c.rows(); ++s)
                block(r0 + s, (a0 + x) * table.dims[j] + b0 + y) = c(s, x * b.dim() + y);
        }
      table.blocks[i][j] = std::move(block);
    }
  }
  return table;
}

PDStructure tot_pd_structure(const FilteredComplex& fc, const SpectralPage& e, int sign) {
  const ProductTable table = tot_product(fc, e);
  const std::size_t top = e.top();
  if (table.dims.empty() || table.dims[top] != 1 || fc.complex().dims[top] != 1) return pd_check(table, 1);
  // The top form is a cocycle; its class sits in the deepest filtration step containing it.
  const Matrix form = Matrix::identity(1);
  std::size_t deepest = 0;
  for (std::size_t p = 0; p <= e.pmax; ++p)
    if (contains(fc.level(top, static_cast<long>(p)), form)) deepest = p;
  const Matrix c = e.cell(deepest, top).coords(form);
  if (c.rows() != 1 || c(0, 0) == 0)
    throw NotPD(PdAxiom::Top, top, "top form has zero class on page " + std::to_string(e.r));
  return pd_check(table, sign * c(0, 0));
}

CoincidenceTrace coincidence_on_page(const GradedMap& f, const GradedMap& g, const FilteredComplex& fc1,
                                     const SpectralPage& e1, const FilteredComplex& fc2,
                                     const SpectralPage& e2, int sign1, int sign2) {
  const GradedMap tf = tot_map(induced_page_map(f, fc2, e2, fc1, e1), e2, e1);
  const GradedMap tg = tot_map(induced_page_map(g, fc2, e2, fc1, e1), e2, e1);
  return coincidence(tf, tg, tot_pd_structure(fc1, e1, sign1), tot_pd_structure(fc2, e2, sign2));
}

namespace {

struct FlagBasis {
  Matrix basis;                    // columns ordered from the deepest filtration step outwards
  std::vector<std::size_t> level;  // filtration level of each column
};

FlagBasis flag_basis(const FilteredComplex& fc, std::size_t k) {
  const std::size_t dim = fc.complex().dims[k];
  FlagBasis fb{Matrix(dim, 0), {}};
  for (std::size_t p = fc.pmax + 1; p-- > 0;) {
    const Matrix step = fc.level(k, static_cast<long>(p)).vectors;
    for (std::size_t j = 0; j < step.cols(); ++j) {
      const Matrix extended = hstack(fb.basis, as_column(step.col(j)));
      if (rank(extended) == extended.cols()) {
        fb.basis = extended;
        fb.level.push_back(p);
      }
    }
  }
  return fb;
}

}  // namespace

std::vector<GradedMap> filtered_cochain_map_basis(const FilteredComplex& src, const FilteredComplex& dst) {
  const auto& cs = src.complex();
  const auto& cd = dst.complex();
  if (cs.dims.size() != cd.dims.size()) throw DimensionMismatch("filtered maps between complexes of different length");
  const std::size_t degrees = cs.dims.size();

  std::vector<FlagBasis> bs, bd;
  std::vector<Matrix> bs_inv, bd_inv;
  for (std::size_t k = 0; k < degrees; ++k) {
    bs.push_back(flag_basis(src, k));
    bd.push_back(flag_basis(dst, k));
    bs_inv.push_back(inverse(bs[k].basis));
    bd_inv.push_back(inverse(bd[k].basis));
  }

  // Unknowns: entries (s, t) of each block in flag coordinates with level(s) >= level(t).
  std::vector<std::vector<long>> var(degrees);
  std::size_t nvars = 0;
  for (std::size_t k = 0; k < degrees; ++k) {
    var[k].assign(cd.dims[k] * cs.dims[k], -1);
    for (std::size_t s = 0; s < cd.dims[k]; ++s)
      for (std::size_t t = 0; t < cs.dims[k]; ++t)
        if (bd[k].level[s] >= bs[k].level[t]) var[k][s * cs.dims[k] + t] = static_cast<long>(nvars++);
  }

  // d_dst f_k = f_{k+1} d_src, written in flag coordinates.
  std::size_t neq = 0;
  for (std::size_t k = 0; k + 1 < degrees; ++k) neq += cd.dims[k + 1] * cs.dims[k];
  Matrix eqs(neq, nvars);
  std::size_t row = 0;
  for (std::size_t k = 0; k + 1 < degrees; ++k) {
    const Matrix ds = bs_inv[k + 1] * cs.d[k] * bs[k].basis;
    const Matrix dd = bd_inv[k + 1] * cd.d[k] * bd[k].basis;
    for (std::size_t r = 0; r < cd.dims[k + 1]; ++r)
      for (std::size_t c = 0; c < cs.dims[k]; ++c, ++row) {
        for (std::size_t s = 0; s < cd.dims[k]; ++s) {
          const long v = var[k][s * cs.dims[k] + c];
          if (v >= 0 && dd(r, s) != 0) eqs(row, static_cast<std::size_t>(v)) += dd(r, s);
        }
        for (std::size_t s = 0; s < cs.dims[k + 1]; ++s) {
          const long v = var[k + 1][r * cs.dims[k + 1] + s];
          if (v >= 0 && ds(s, c) != 0) eqs(row, static_cast<std::size_t>(v)) -= ds(s, c);
        }
      }
  }

  const SubspaceBasis solutions = kernel(eqs);
  std::vector<GradedMap> out;
  for (std::size_t j = 0; j < solutions.dim(); ++j) {
    GradedMap f;
    for (std::size_t k = 0; k < degrees; ++k) {
      Matrix block(cd.dims[k], cs.dims[k]);
      for (std::size_t s = 0; s < cd.dims[k]; ++s)
        for (std::size_t t = 0; t < cs.dims[k]; ++t) {
          const long v = var[k][s * cs.dims[k] + t];
          if (v >= 0) block(s, t) = solutions.vectors(static_cast<std::size_t>(v), j);
        }
      f.blocks.push_back(bd[k].basis * block * bs_inv[k]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

GradedMap random_combination(const std::vector<GradedMap>& basis, const std::vector<std::size_t>& dims_dst,
                             const std::vector<std::size_t>& dims_src, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  GradedMap f = GradedMap::zero(dims_dst, dims_src);
  for (const auto& b : basis) {
    const int c = coeff(rng);
    if (c != 0) f = f + Scalar(c) * b;
  }
  return f;
}

std::size_t TwistedModel::cell_dim(std::size_t p, std::size_t q) const {
  if (p > a_dim || q >= nil_betti.size()) return 0;
  return ExteriorBasis::binomial(a_dim, p) * nil_betti[q];
}

std::size_t TwistedModel::index(std::size_t p, std::size_t q, std::size_t subset_pos, std::size_t h) const {
  return offsets.at(p + q).at(p) + subset_pos * nil_betti.at(q) + h;
}

TwistedModel twisted_model(const ExtensionData& ext, const ActionOnCohomology& action) {
  const std::size_t m = ext.quotient_dim();
  const std::size_t kdim = ext.ideal_dim();
  const std::size_t n = ext.g.dim();
  const ExteriorBasis abasis(m);
  const ExteriorBasis gbasis(n);
  const CohomologyRing& h = action.cohomology;
  if (!h.product) throw Error("twisted model needs the product on H*(n)");

  TwistedModel model;
  model.a_dim = m;
  model.nil_betti = h.betti();
  std::vector<std::size_t> dims(n + 1, 0);
  model.offsets.assign(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t p = 0; p <= m; ++p) {
      model.offsets[k][p] = dims[k];
      if (p <= k) dims[k] += model.cell_dim(p, k - p);
    }

  // Differential.
  std::vector<Matrix> d;
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix block(k < n ? dims[k + 1] : 0, dims[k]);
    for (std::size_t p = 0; p <= std::min(m, k) && k < n; ++p) {
      const std::size_t q = k - p;
      if (q > kdim) continue;
      for (std::size_t pos = 0; pos < abasis.dim(p); ++pos) {
        const MultiIndex subset = abasis.degree_basis(p)[pos];
        for (std::size_t j = 0; j < m; ++j) {
          const WedgeResult w = wedge_sign(MultiIndex::from_indices({j}), subset);
          if (w.sign == 0) continue;
          const Matrix& op = action.operators[j][q];
          const std::size_t target_pos = abasis.position(w.result);
          for (std::size_t hs = 0; hs < model.nil_betti[q]; ++hs)
            for (std::size_t ht = 0; ht < model.nil_betti[q]; ++ht)
              if (op(ht, hs) != 0)
                block(model.index(p + 1, q, target_pos, ht), model.index(p, q, pos, hs)) += w.sign * op(ht, hs);
        }
      }
    }
    d.push_back(std::move(block));
  }
  model.dga.complex = CochainComplex::from_blocks(dims, std::move(d));

  // Product.
  ProductTable& table = model.dga.product;
  table.dims = dims;
  table.blocks.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    table.blocks[i].resize(n + 1);
    for (std::size_t j = 0; i + j <= n; ++j) {
      Matrix block(dims[i + j], dims[i] * dims[j]);
      for (std::size_t p = 0; p <= std::min(m, i); ++p)
        for (std::size_t pp = 0; pp <= std::min(m, j); ++pp) {
          const std::size_t q = i - p, qq = j - pp;
          if (q > kdim || qq > kdim || p + pp > m || q + qq > kdim) continue;
          const int koszul = (q * pp) % 2 ? -1 : 1;
          for (std::size_t a = 0; a < abasis.dim(p); ++a)
            for (std::size_t b = 0; b < abasis.dim(pp); ++b) {
              const WedgeResult w = wedge_sign(abasis.degree_basis(p)[a], abasis.degree_basis(pp)[b]);
              if (w.sign == 0) continue;
              const std::size_t target_pos = abasis.position(w.result);
              for (std::size_t x = 0; x < model.nil_betti[q]; ++x)
                for (std::size_t y = 0; y < model.nil_betti[qq]; ++y) {
                  const Vector hh = h.product->basis_product(q, x, qq, y);
                  const std::size_t col = model.index(p, q, a, x) * dims[j] + model.index(pp, qq, b, y);
                  for (std::size_t z = 0; z < hh.size(); ++z)
                    if (hh[z] != 0) block(model.index(p + pp, q + qq, target_pos, z), col) += koszul * w.sign * hh[z];
                }
            }
        }
      table.blocks[i][j] = std::move(block);
    }
  }

  // Embedding into the forms on g: sigma_P ^ rep(h), sigma_j being dual coordinate kdim + j.
  const GradedMap to_std = extend_map(adapted_dual_basis(ext));
  const ExteriorBasis nbasis(kdim);
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix adapted(gbasis.dim(k), dims[k]);
    for (std::size_t p = 0; p <= std::min(m, k); ++p) {
      const std::size_t q = k - p;
      if (q > kdim) continue;
      const Matrix& reps = h.degrees[q].representatives;
      for (std::size_t pos = 0; pos < abasis.dim(p); ++pos) {
        std::vector<std::size_t> shifted;
        for (auto i : abasis.degree_basis(p)[pos].indices()) shifted.push_back(i + kdim);
        const MultiIndex sigma = MultiIndex::from_indices(shifted);
        for (std::size_t x = 0; x < model.nil_betti[q]; ++x)
          for (std::size_t mono = 0; mono < nbasis.dim(q); ++mono) {
            if (reps(mono, x) == 0) continue;
            const WedgeResult w = wedge_sign(sigma, nbasis.degree_basis(q)[mono]);
            adapted(gbasis.position(w.result), model.index(p, q, pos, x)) += w.sign * reps(mono, x);
          }
      }
    }
    model.embedding.push_back(to_std[k] * adapted);
  }
  return model;
}

GradedMap twisted_model_map(const TwistedModel& src2, const TwistedModel& dst1, const Matrix& phi_a,
                            const GradedMap& h_phi_n) {
  if (src2.a_dim != dst1.a_dim || src2.nil_betti.size() != dst1.nil_betti.size())
    throw DimensionMismatch("twisted model map needs matching extension shapes");
  if (phi_a.rows() != src2.a_dim || phi_a.cols() != dst1.a_dim)
    throw DimensionMismatch("phi_a has the wrong shape");
  const GradedMap pull_a = extend_map(phi_a.transpose());
  const auto& rows = dst1.dga.complex.dims;
  const auto& cols = src2.dga.complex.dims;
  GradedMap out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    Matrix block(rows[k], cols[k]);
    for (std::size_t p = 0; p <= std::min(src2.a_dim, k); ++p) {
      const std::size_t q = k - p;
      if (q >= src2.nil_betti.size()) continue;
      const Matrix piece = kron(pull_a[p], h_phi_n[q]);
      const std::size_t r0 = dst1.offsets[k][p];
      const std::size_t c0 = src2.offsets[k][p];
      for (std::size_t i = 0; i < piece.rows(); ++i)
        for (std::size_t j = 0; j < piece.cols(); ++j) block(r0 + i, c0 + j) = piece(i, j);
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

Scalar twisted_model_orientation(const TwistedModel& m, int sign) {
  const std::size_t top = m.dga.complex.top();
  const Matrix& e = m.embedding.at(top);
  if (e.rows() != 1 || e.cols() != 1 || e(0, 0) == 0)
    throw NotPD(PdAxiom::Top, top, "twisted model has no one-dimensional top degree");
  return Scalar(sign) / e(0, 0);
}

}  // namespace lef
