#include "lef/dga.hpp"

#include <string>

namespace lef {

namespace {

std::string deg(std::size_t k) { return std::to_string(k); }

Vector zero_vector(std::size_t n) { return Vector(n); }

}  // namespace

CochainComplex CochainComplex::zero_differential(const std::vector<std::size_t>& dims) {
  CochainComplex c;
  c.dims = dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    c.d.emplace_back(k + 1 < dims.size() ? dims[k + 1] : 0, dims[k]);
  return c;
}

CochainComplex CochainComplex::from_blocks(const std::vector<std::size_t>& dims,
                                           std::vector<Matrix> d) {
  CochainComplex c{dims, std::move(d)};
  if (!dims.empty() && c.d.size() + 1 == dims.size()) c.d.emplace_back(0, dims.back());
  check_complex(c);
  return c;
}

void check_complex(const CochainComplex& c) {
  if (c.d.size() != c.dims.size())
    throw NotAComplex("complex has " + std::to_string(c.dims.size()) + " degrees but " +
                      std::to_string(c.d.size()) + " differential blocks");
  for (std::size_t k = 0; k < c.dims.size(); ++k) {
    if (c.d[k].rows() != c.dim(k + 1) || c.d[k].cols() != c.dims[k])
      throw NotAComplex("differential block in degree " + deg(k) + " has the wrong shape");
  }
  for (std::size_t k = 0; k + 1 < c.dims.size(); ++k)
    if (!(c.d[k + 1] * c.d[k]).is_zero())
      throw NotAComplex("d o d is nonzero starting in degree " + deg(k));
}

Vector ProductTable::basis_product(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const {
  if (i + j > top()) return {};
  return blocks[i][j].col(a * dims[j] + b);
}

Vector ProductTable::multiply(std::size_t i, const Vector& a, std::size_t j, const Vector& b) const {
  if (i + j > top()) return {};
  const Matrix& block = blocks[i][j];
  Vector out = zero_vector(dims[i + j]);
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s] == 0) continue;
    for (std::size_t t = 0; t < b.size(); ++t) {
      if (b[t] == 0) continue;
      const Scalar coeff = a[s] * b[t];
      const std::size_t column = s * dims[j] + t;
      for (std::size_t r = 0; r < out.size(); ++r)
        if (block(r, column) != 0) out[r] += coeff * block(r, column);
    }
  }
  return out;
}

ProductTable exterior_product_table(std::size_t n) {
  const ExteriorBasis basis(n);
  ProductTable table;
  table.dims = basis.dims();
  table.blocks.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    table.blocks[i].resize(n + 1);
    for (std::size_t j = 0; i + j <= n; ++j) {
      Matrix block(basis.dim(i + j), basis.dim(i) * basis.dim(j));
      for (std::size_t a = 0; a < basis.dim(i); ++a)
        for (std::size_t b = 0; b < basis.dim(j); ++b) {
          const WedgeResult w = wedge_sign(basis.degree_basis(i)[a], basis.degree_basis(j)[b]);
          if (w.sign != 0) block(basis.position(w.result), a * basis.dim(j) + b) = w.sign;
        }
      table.blocks[i][j] = std::move(block);
    }
  }
  return table;
}

void validate_dga(const DGA& a) {
  check_complex(a.complex);
  const auto& dims = a.complex.dims;
  if (a.product.dims != dims) throw DimensionMismatch("product table and complex disagree on dimensions");
  const std::size_t top = a.complex.top();
  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t j = 0; i + j <= top; ++j)
      for (std::size_t x = 0; x < dims[i]; ++x)
        for (std::size_t y = 0; y < dims[j]; ++y) {
          const Vector xy = a.product.basis_product(i, x, j, y);
          Vector yx = a.product.basis_product(j, y, i, x);
          if ((i * j) % 2)
            for (auto& s : yx) s = -s;
          if (xy != yx)
            throw Error("product is not graded commutative in degrees (" + deg(i) + ", " +
                        deg(j) + ")");
          if (i + j + 1 > top) continue;
          Vector ex(dims[i]), ey(dims[j]);
          ex[x] = 1;
          ey[y] = 1;
          const Vector lhs = a.complex.d[i + j] * xy;
          Vector rhs = a.product.multiply(i + 1, a.complex.d[i] * ex, j, ey);
          const Vector second = a.product.multiply(i, ex, j + 1, a.complex.d[j] * ey);
          for (std::size_t r = 0; r < rhs.size(); ++r) rhs[r] += i % 2 ? Scalar(-second[r]) : second[r];
          if (lhs != rhs)
            throw Error("Leibniz rule fails in degrees (" + deg(i) + ", " + deg(j) + ")");
        }
}

std::vector<std::size_t> CohomologyRing::betti() const {
  std::vector<std::size_t> b;
  for (const auto& d : degrees) b.push_back(d.classes.dim());
  return b;
}

Matrix CohomologyRing::classes_of(std::size_t k, const Matrix& cocycles) const {
  const auto& d = degrees.at(k);
  auto coords = solve_in_basis(d.cocycles.vectors, cocycles);
  if (!coords) throw NotAComplex("element of degree " + deg(k) + " is not a cocycle");
  return d.classes.projection * *coords;
}

CohomologyRing cohomology(const CochainComplex& c) {
  check_complex(c);
  CohomologyRing h;
  for (std::size_t k = 0; k < c.dims.size(); ++k) {
    CohomologyDegree d;
    d.cocycles = kernel(c.d[k]);
    d.coboundaries = k == 0 ? SubspaceBasis::zero(c.dims[0]) : image(c.d[k - 1]);
    auto coords = solve_in_basis(d.cocycles.vectors, d.coboundaries.vectors);
    if (!coords) throw NotAComplex("coboundaries escape the cocycles in degree " + deg(k));
    d.classes = quotient(d.cocycles.dim(), span(d.cocycles.dim(), *coords));
    d.representatives = d.cocycles.vectors * d.classes.section;
    h.degrees.push_back(std::move(d));
  }
  return h;
}

CohomologyRing cohomology(const DGA& a) {
  CohomologyRing h = cohomology(a.complex);
  ProductTable table;
  table.dims = h.betti();
  const std::size_t top = a.complex.top();
  table.blocks.resize(top + 1);
  for (std::size_t i = 0; i <= top; ++i) {
    table.blocks[i].resize(top + 1);
    for (std::size_t j = 0; i + j <= top; ++j) {
      const Matrix& ri = h.degrees[i].representatives;
      const Matrix& rj = h.degrees[j].representatives;
      Matrix products(a.complex.dims[i + j], ri.cols() * rj.cols());
      for (std::size_t x = 0; x < ri.cols(); ++x)
        for (std::size_t y = 0; y < rj.cols(); ++y)
          products.set_col(x * rj.cols() + y, a.product.multiply(i, ri.col(x), j, rj.col(y)));
      table.blocks[i][j] = h.classes_of(i + j, products);
    }
  }
  h.product = std::move(table);
  return h;
}

void check_cochain_map(const GradedMap& f, const CochainComplex& src, const CochainComplex& dst) {
  if (f.degrees() != src.dims.size() || f.degrees() != dst.dims.size())
    throw NotCochainMap(0, "map and complexes have different degree ranges");
  for (std::size_t k = 0; k < f.degrees(); ++k)
    if (f[k].rows() != dst.dims[k] || f[k].cols() != src.dims[k])
      throw NotCochainMap(k, "map block in degree " + deg(k) + " has the wrong shape");
  for (std::size_t k = 0; k + 1 < f.degrees(); ++k)
    if (dst.d[k] * f[k] != f[k + 1] * src.d[k])
      throw NotCochainMap(k, "map does not commute with d in degree " + deg(k));
}

GradedMap induced_map(const GradedMap& f, const CochainComplex& src, const CohomologyRing& hsrc,
                      const CochainComplex& dst, const CohomologyRing& hdst) {
  check_cochain_map(f, src, dst);
  GradedMap out;
  for (std::size_t k = 0; k < f.degrees(); ++k) {
    const Matrix boundary_images = f[k] * hsrc.degrees[k].coboundaries.vectors;
    if (!hdst.classes_of(k, boundary_images).is_zero())
      throw NotCochainMap(k, "induced map depends on the representative in degree " + deg(k));
    out.blocks.push_back(hdst.classes_of(k, f[k] * hsrc.degrees[k].representatives));
  }
  return out;
}

std::string to_string(PdAxiom axiom) {
  switch (axiom) {
    case PdAxiom::Bottom: return "bottom";
    case PdAxiom::Top: return "top";
    case PdAxiom::Pairing: return "pairing";
    case PdAxiom::Differential: return "differential";
  }
  return "unknown";
}

PDStructure pd_check(const ProductTable& algebra, const Scalar& orientation) {
  if (orientation == 0) throw NotPD(PdAxiom::Top, 0, "orientation class must be nonzero");
  const auto& dims = algebra.dims;
  if (dims.empty() || dims[0] != 1)
    throw NotPD(PdAxiom::Bottom, 0, "degree 0 is not one-dimensional");
  if (algebra.empty()) throw NotPD(PdAxiom::Bottom, 0, "no multiplication available");
  const std::size_t n = algebra.top();

  // The degree-0 generator must act as a nonzero multiple of the identity.
  const Scalar unit = algebra.basis_product(0, 0, 0, 0).at(0);
  if (unit == 0) throw NotPD(PdAxiom::Bottom, 0, "degree-0 generator squares to zero");
  for (std::size_t k = 0; k <= n; ++k) {
    const Matrix left = algebra.blocks[0][k];
    Matrix right(dims[k], dims[k]);
    for (std::size_t b = 0; b < dims[k]; ++b) right.set_col(b, algebra.basis_product(k, b, 0, 0));
    const Matrix expected = unit * Matrix::identity(dims[k]);
    if (left != expected || right != expected)
      throw NotPD(PdAxiom::Bottom, k, "degree-0 generator is not a unit on degree " + deg(k));
  }

  if (dims[n] != 1)
    throw NotPD(PdAxiom::Top, n,
                "top degree " + deg(n) + " has dimension " + std::to_string(dims[n]) + ", expected 1");

  PDStructure pd;
  pd.dims = dims;
  pd.top = n;
  pd.orientation = orientation;
  for (std::size_t i = 0; i <= n; ++i) {
    if (dims[i] != dims[n - i])
      throw NotPD(PdAxiom::Pairing, i,
                  "dimensions of degrees " + deg(i) + " and " + deg(n - i) + " differ");
    Matrix p(dims[i], dims[n - i]);
    for (std::size_t a = 0; a < dims[i]; ++a)
      for (std::size_t b = 0; b < dims[n - i]; ++b)
        p(a, b) = algebra.basis_product(i, a, n - i, b).at(0) / orientation;
    if (det(p) == 0)
      throw NotPD(PdAxiom::Pairing, i, "pairing of degrees " + deg(i) + " and " + deg(n - i) +
                                           " is degenerate");
    pd.pairing.push_back(std::move(p));
  }
  return pd;
}

PDStructure pd_check(const DGA& a, const Scalar& orientation) {
  PDStructure pd = pd_check(a.product, orientation);
  const std::size_t n = pd.top;
  if (!a.complex.d[0].is_zero()) throw NotPD(PdAxiom::Differential, 0, "d is nonzero on degree 0");
  if (n >= 1 && !a.complex.d[n - 1].is_zero())
    throw NotPD(PdAxiom::Differential, n - 1, "d is nonzero on degree " + deg(n - 1));
  return pd;
}

PDStructure pd_check(const CohomologyRing& h, const Scalar& orientation) {
  if (!h.product) throw NotPD(PdAxiom::Bottom, 0, "cohomology computed without products");
  return pd_check(*h.product, orientation);
}

int coincidence_sign(std::size_t top) { return top % 2 ? -1 : 1; }

CoincidenceTrace coincidence(const GradedMap& f, const GradedMap& g, const PDStructure& pd1,
                             const PDStructure& pd2) {
  if (pd1.top != pd2.top)
    throw DimensionMismatch("coincidence number needs equal top degrees (" + deg(pd1.top) +
                            " vs " + deg(pd2.top) + ")");
  const std::size_t n = pd1.top;
  if (f.degrees() != n + 1 || g.degrees() != n + 1)
    throw DimensionMismatch("coincidence number: maps must have " + std::to_string(n + 1) + " degrees");
  for (std::size_t k = 0; k <= n; ++k)
    for (const GradedMap* m : {&f, &g})
      if ((*m)[k].rows() != pd1.dims[k] || (*m)[k].cols() != pd2.dims[k])
        throw DimensionMismatch("coincidence number: map block in degree " + deg(k) +
                                " does not go from algebra 2 to algebra 1");

  CoincidenceTrace out;
  Scalar alternating = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const Matrix dual_g =
        inverse(pd2.pairing[i].transpose()) * dual_map(g[n - i]) * pd1.pairing[i].transpose();
    Matrix theta = dual_g * f[i];
    const Scalar t = trace(theta);
    alternating += i % 2 ? Scalar(-t) : t;
    out.traces.push_back(t);
    out.theta.push_back(std::move(theta));
  }
  out.value = coincidence_sign(n) * alternating;
  return out;
}

}  // namespace lef
