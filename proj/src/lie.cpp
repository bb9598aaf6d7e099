#include "lef/lie.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace lef {

namespace mp = boost::multiprecision;

LieAlgebra::LieAlgebra(std::vector<std::string> basis_names, const std::vector<BracketTerm>& brackets)
    : names_(std::move(basis_names)) {
  const std::size_t n = names_.size();
  c_.assign(n * n * n, Scalar(0));
  for (const auto& t : brackets) {
    if (t.i >= t.j || t.j >= n || t.k >= n)
      throw DimensionMismatch("bracket term (" + std::to_string(t.i) + ", " + std::to_string(t.j) +
                              ") -> " + std::to_string(t.k) + " is out of range or has i >= j");
    c_[(t.i * n + t.j) * n + t.k] += t.coeff;
    c_[(t.j * n + t.i) * n + t.k] -= t.coeff;
  }
}

LieAlgebra LieAlgebra::abelian(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
  return LieAlgebra(std::move(names), {});
}

Vector LieAlgebra::bracket(const Vector& u, const Vector& v) const {
  const std::size_t n = dim();
  if (u.size() != n || v.size() != n) throw DimensionMismatch("bracket of vectors of the wrong length");
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0 || i == j) continue;
      const Scalar uv = u[i] * v[j];
      for (std::size_t k = 0; k < n; ++k)
        if (constant(i, j, k) != 0) out[k] += uv * constant(i, j, k);
    }
  }
  return out;
}

Vector LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  Vector out(dim());
  for (std::size_t k = 0; k < dim(); ++k) out[k] = constant(i, j, k);
  return out;
}

Matrix LieAlgebra::ad(const Vector& u) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    Vector e(dim());
    e[j] = 1;
    m.set_col(j, bracket(u, e));
  }
  return m;
}

Matrix LieAlgebra::ad_basis(std::size_t i) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t k = 0; k < dim(); ++k) m(k, j) = constant(i, j, k);
  return m;
}

std::vector<BracketTerm> LieAlgebra::terms() const {
  std::vector<BracketTerm> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      for (std::size_t k = 0; k < dim(); ++k)
        if (constant(i, j, k) != 0) out.push_back({i, j, k, constant(i, j, k)});
  return out;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s == 0; });
}

JacobiViolation::JacobiViolation(std::size_t i_, std::size_t j_, std::size_t k_, Vector d)
    : Error("Jacobi identity fails on (" + std::to_string(i_) + ", " + std::to_string(j_) + ", " +
            std::to_string(k_) + ")"),
      i(i_), j(j_), k(k_), defect(std::move(d)) {}

BracketViolation::BracketViolation(std::size_t i_, std::size_t j_, Vector d)
    : Error("map does not preserve the bracket of basis elements " + std::to_string(i_) + " and " +
            std::to_string(j_)),
      i(i_), j(j_), defect(std::move(d)) {}

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector e(n);
  e[i] = 1;
  return e;
}

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s == 0; });
}

// span{[u, v] : u in a, v in b}
SubspaceBasis bracket_span(const LieAlgebra& g, const Matrix& a, const Matrix& b) {
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(g.bracket(a.col(i), b.col(j)));
  return span(g.dim(), Matrix::from_columns(g.dim(), cols));
}

}  // namespace

void validate(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vector sum = g.bracket(g.bracket_basis(i, j), unit(n, k));
        const Vector b = g.bracket(g.bracket_basis(j, k), unit(n, i));
        const Vector c = g.bracket(g.bracket_basis(k, i), unit(n, j));
        for (std::size_t r = 0; r < n; ++r) sum[r] += b[r] + c[r];
        if (!is_zero_vector(sum)) throw JacobiViolation(i, j, k, std::move(sum));
      }
}

bool is_unimodular(const LieAlgebra& g) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (trace(g.ad_basis(i)) != 0) return false;
  return true;
}

SubspaceBasis derived_subalgebra(const LieAlgebra& g) {
  const Matrix all = Matrix::identity(g.dim());
  return bracket_span(g, all, all);
}

bool is_solvable(const LieAlgebra& g) {
  SubspaceBasis s = SubspaceBasis::full(g.dim());
  while (s.dim() > 0) {
    SubspaceBasis next = bracket_span(g, s.vectors, s.vectors);
    if (next.dim() == s.dim()) return false;
    s = std::move(next);
  }
  return true;
}

bool is_nilpotent(const LieAlgebra& g) {
  const Matrix all = Matrix::identity(g.dim());
  SubspaceBasis c = SubspaceBasis::full(g.dim());
  while (c.dim() > 0) {
    SubspaceBasis next = bracket_span(g, all, c.vectors);
    if (next.dim() == c.dim()) return false;
    c = std::move(next);
  }
  return true;
}

namespace {

std::vector<std::string> subspace_names(const LieAlgebra& g, const Matrix& basis, const std::string& prefix) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    std::optional<std::size_t> single;
    bool is_unit = true;
    for (std::size_t r = 0; r < basis.rows(); ++r) {
      if (basis(r, c) == 0) continue;
      if (basis(r, c) != 1 || single) is_unit = false;
      single = r;
    }
    names.push_back(is_unit && single ? g.names()[*single] : prefix + std::to_string(c + 1));
  }
  return names;
}

}  // namespace

LieAlgebra restrict_to(const LieAlgebra& g, const SubspaceBasis& sub) {
  const std::size_t k = sub.dim();
  std::vector<BracketTerm> terms;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const Vector br = g.bracket(sub.vectors.col(a), sub.vectors.col(b));
      auto coords = solve_in_basis(sub.vectors, as_column(br));
      if (!coords) throw Error("subspace is not closed under the bracket");
      for (std::size_t c = 0; c < k; ++c)
        if ((*coords)(c, 0) != 0) terms.push_back({a, b, c, (*coords)(c, 0)});
    }
  return LieAlgebra(subspace_names(g, sub.vectors, "N"), terms);
}

ExtensionData extension_by_ideal(const LieAlgebra& g, const SubspaceBasis& ideal) {
  const std::size_t n = g.dim();
  if (ideal.ambient_dim != n) throw DimensionMismatch("ideal lives in the wrong dimension");
  if (!contains(ideal, derived_subalgebra(g).vectors))
    throw Error("ideal does not contain [g, g], so g / n is not abelian");
  for (std::size_t i = 0; i < n; ++i)
    if (!contains(ideal, g.ad_basis(i) * ideal.vectors)) throw Error("subspace is not an ideal");

  ExtensionData ext;
  ext.g = g;
  ext.ideal = ideal;
  ext.quotient = quotient(n, ideal);
  std::vector<std::string> a_names;
  for (auto c : ext.quotient.complement) a_names.push_back(g.names()[c]);
  ext.a = LieAlgebra(std::move(a_names), {});
  ext.nil = restrict_to(g, ideal);
  ext.adapted_basis = hstack(ideal.vectors, ext.quotient.section);
  for (std::size_t j = 0; j < ext.quotient.dim(); ++j) {
    const Matrix image = g.ad(ext.quotient.section.col(j)) * ideal.vectors;
    ext.action.push_back(*solve_in_basis(ideal.vectors, image));
  }
  return ext;
}

ExtensionData derived_ideal(const LieAlgebra& g) {
  if (!is_solvable(g)) throw NotSolvable("derived series of g does not reach zero");
  ExtensionData ext = extension_by_ideal(g, derived_subalgebra(g));
  if (!is_nilpotent(ext.nil)) throw Error("[g, g] is not nilpotent");
  return ext;
}

GradedMap ce_differential(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  const ExteriorBasis basis(n);

  // d x^k = - sum_{a<b} c_{ab}^k x^a ^ x^b
  std::vector<std::vector<BracketTerm>> dx(n);
  for (const auto& t : g.terms()) dx[t.k].push_back({t.i, t.j, t.k, -t.coeff});

  GradedMap d;
  for (std::size_t p = 0; p <= n; ++p) {
    Matrix block(p < n ? basis.dim(p + 1) : 0, basis.dim(p));
    for (std::size_t col = 0; col < basis.dim(p); ++col) {
      const auto idx = basis.degree_basis(p)[col].indices();
      for (std::size_t s = 0; s < idx.size(); ++s) {
        for (const auto& t : dx[idx[s]]) {
          std::vector<std::size_t> seq(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s));
          seq.push_back(t.i);
          seq.push_back(t.j);
          seq.insert(seq.end(), idx.begin() + static_cast<std::ptrdiff_t>(s) + 1, idx.end());
          const int sign = sort_sign(seq);
          if (sign == 0) continue;
          std::sort(seq.begin(), seq.end());
          const Scalar coeff = (s % 2 ? -sign : sign) * t.coeff;
          block(basis.position(MultiIndex::from_indices(seq)), col) += coeff;
        }
      }
    }
    d.blocks.push_back(std::move(block));
  }
  return d;
}

DGA ce_dga(const LieAlgebra& g) {
  DGA a;
  a.complex.dims = ExteriorBasis(g.dim()).dims();
  a.complex.d = ce_differential(g).blocks;
  a.product = exterior_product_table(g.dim());
  check_complex(a.complex);
  return a;
}

void hom_validate(const LieHom& phi) {
  const std::size_t n = phi.source.dim();
  if (phi.matrix.rows() != phi.target.dim() || phi.matrix.cols() != n)
    throw DimensionMismatch("homomorphism matrix must be " + std::to_string(phi.target.dim()) + "x" +
                            std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector lhs = phi.matrix * phi.source.bracket_basis(i, j);
      const Vector rhs = phi.target.bracket(phi.matrix.col(i), phi.matrix.col(j));
      for (std::size_t r = 0; r < lhs.size(); ++r) lhs[r] -= rhs[r];
      if (!is_zero_vector(lhs)) throw BracketViolation(i, j, std::move(lhs));
    }
}

LieHom compose(const LieHom& outer, const LieHom& inner) {
  return {inner.source, outer.target, outer.matrix * inner.matrix};
}

GradedMap pullback(const LieHom& phi) { return extend_map(phi.matrix.transpose()); }

ActionOnCohomology action_on_nil_cohomology(const ExtensionData& ext) {
  ActionOnCohomology out;
  out.nil_dga = ce_dga(ext.nil);
  out.cohomology = cohomology(out.nil_dga);
  for (const Matrix& ad_s : ext.action) {
    // (L_S nu)(N) = -nu([S, N]) on n*, extended as a derivation.
    GradedMap lie_derivative = extend_derivation(Scalar(-1) * ad_s.transpose());
    GradedMap induced;
    try {
      induced = induced_map(lie_derivative, out.nil_dga.complex, out.cohomology,
                            out.nil_dga.complex, out.cohomology);
    } catch (const NotCochainMap& e) {
      throw IllDefinedAction(std::string("action on H*(n) is not well defined: ") + e.what());
    }
    out.cochain_operators.push_back(std::move(lie_derivative));
    out.operators.push_back(std::move(induced));
  }
  for (std::size_t i = 0; i < out.operators.size(); ++i)
    for (std::size_t j = i + 1; j < out.operators.size(); ++j)
      if (compose(out.operators[i], out.operators[j]) != compose(out.operators[j], out.operators[i]))
        throw IllDefinedAction("operators of the abelian quotient do not commute on H*(n)");
  return out;
}

std::vector<Scalar> characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw NonSquare("characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier.
  const std::size_t n = m.rows();
  std::vector<Scalar> c(n + 1);
  c[n] = 1;
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * Matrix::identity(n);
    c[n - k] = -trace(m * mk) / Scalar(static_cast<long>(k));
  }
  return c;
}

namespace {

constexpr long kDivisorLimit = 1000000;

std::vector<Integer> positive_divisors(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  return out;
}

// True iff every root of the polynomial is rational; nullopt if the search is too large.
std::optional<bool> splits_over_q(std::vector<Scalar> poly) {
  while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
  while (poly.size() > 1 && poly.front() == 0) poly.erase(poly.begin());
  while (poly.size() > 1) {
    Integer l = 1;
    for (const auto& c : poly) l = mp::lcm(l, Integer(mp::denominator(c)));
    const Integer a0 = mp::numerator(Scalar(poly.front() * l));
    const Integer an = mp::numerator(Scalar(poly.back() * l));
    if (mp::abs(a0) > kDivisorLimit || mp::abs(an) > kDivisorLimit) return std::nullopt;
    std::optional<Scalar> root;
    for (const Integer& p : positive_divisors(a0)) {
      for (const Integer& q : positive_divisors(an)) {
        for (int s : {1, -1}) {
          const Scalar x = Scalar(s * p, q);
          Scalar value = 0;
          for (std::size_t k = poly.size(); k-- > 0;) value = value * x + poly[k];
          if (value == 0) root = x;
          if (root) break;
        }
        if (root) break;
      }
      if (root) break;
    }
    if (!root) return false;
    // Synthetic division by (t - root).
    std::vector<Scalar> quotient(poly.size() - 1);
    Scalar carry = 0;
    for (std::size_t k = poly.size(); k-- > 1;) {
      carry = carry * *root + poly[k];
      quotient[k - 1] = carry;
    }
    poly = std::move(quotient);
    while (poly.size() > 1 && poly.front() == 0) poly.erase(poly.begin());
  }
  return true;
}

}  // namespace

SplitStatus complete_solvability_check(const LieAlgebra& g) {
  std::vector<Vector> probes;
  for (std::size_t i = 0; i < g.dim(); ++i) probes.push_back(unit(g.dim(), i));
  std::mt19937 rng(20240917);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int t = 0; t < 4; ++t) {
    Vector v(g.dim());
    for (auto& x : v) x = coeff(rng);
    probes.push_back(std::move(v));
  }
  for (const auto& v : probes) {
    auto split = splits_over_q(characteristic_polynomial(g.ad(v)));
    if (!split || !*split) return SplitStatus::Unverified;
  }
  return SplitStatus::Verified;
}

}  // namespace lef
