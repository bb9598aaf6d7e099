#include "lef/coincidence.hpp"

#include <future>
#include <sstream>

namespace lef {

ExtensionData extension_for(const LieAlgebra& g, const IdealChoice& choice) {
  ExtensionData ext;
  switch (choice.kind) {
    case IdealKind::Derived:
      return derived_ideal(g);
    case IdealKind::Full:
      ext = extension_by_ideal(g, SubspaceBasis::full(g.dim()));
      break;
    case IdealKind::Custom:
      if (choice.custom.rows() != g.dim()) throw DimensionMismatch("ideal vectors have the wrong length");
      ext = extension_by_ideal(g, span(g.dim(), choice.custom));
      break;
  }
  if (!is_nilpotent(ext.nil)) throw Error("chosen ideal is not nilpotent");
  return ext;
}

SolvPair make_solv_pair(const LieAlgebra& g1, const LieAlgebra& g2, const IdealChoice& ideal1,
                        const IdealChoice& ideal2, bool flip1, bool flip2) {
  if (g1.dim() != g2.dim())
    throw DimensionMismatch("algebras have different dimensions (" + std::to_string(g1.dim()) + " and " +
                            std::to_string(g2.dim()) + ")");
  for (const LieAlgebra* g : {&g1, &g2}) {
    validate(*g);
    if (!is_solvable(*g)) throw NotSolvable("algebra is not solvable");
    if (!is_unimodular(*g)) throw NotUnimodular("algebra is not unimodular");
  }
  SolvPair sp{extension_for(g1, ideal1), extension_for(g2, ideal2), flip1, flip2};
  if (sp.ext1.ideal_dim() != sp.ext2.ideal_dim())
    throw DimensionMismatch("ideals have different dimensions (" + std::to_string(sp.ext1.ideal_dim()) +
                            " and " + std::to_string(sp.ext2.ideal_dim()) + ")");
  return sp;
}

LinearizationPair linearize_from_hom(const SolvPair& sp, const Matrix& phi) {
  LieHom full{sp.g1(), sp.g2(), phi};
  hom_validate(full);
  auto restricted = solve_in_basis(sp.ext2.ideal.vectors, phi * sp.ext1.ideal.vectors);
  if (!restricted) throw RestrictionEscape("homomorphism does not map the ideal of g1 into the ideal of g2");
  LinearizationPair lp{LieHom{sp.ext1.nil, sp.ext2.nil, *restricted},
                       sp.ext2.quotient.projection * phi * sp.ext1.quotient.section, full};
  hom_validate(lp.phi_n);
  return lp;
}

LinearizationPair make_linearization(const SolvPair& sp, const Matrix& phi_n, const Matrix& phi_a) {
  if (phi_a.rows() != sp.ext2.quotient_dim() || phi_a.cols() != sp.ext1.quotient_dim())
    throw DimensionMismatch("phi_a must be " + std::to_string(sp.ext2.quotient_dim()) + "x" +
                            std::to_string(sp.ext1.quotient_dim()));
  LinearizationPair lp{LieHom{sp.ext1.nil, sp.ext2.nil, phi_n}, phi_a, std::nullopt};
  hom_validate(lp.phi_n);
  return lp;
}

LinearizationPair compose(const LinearizationPair& outer, const LinearizationPair& inner) {
  LinearizationPair lp{compose(outer.phi_n, inner.phi_n), outer.phi_a * inner.phi_a, std::nullopt};
  if (outer.full && inner.full) lp.full = compose(*outer.full, *inner.full);
  return lp;
}

PairContext make_context(const SolvPair& sp) {
  PairContext ctx;
  ctx.action1 = action_on_nil_cohomology(sp.ext1);
  ctx.action2 = action_on_nil_cohomology(sp.ext2);
  ctx.model1 = twisted_model(sp.ext1, ctx.action1);
  ctx.model2 = twisted_model(sp.ext2, ctx.action2);
  return ctx;
}

GradedMap nil_cohomology_map(const PairContext& ctx, const LinearizationPair& lp) {
  return induced_map(pullback(lp.phi_n), ctx.action2.nil_dga.complex, ctx.action2.cohomology,
                     ctx.action1.nil_dga.complex, ctx.action1.cohomology);
}

EquivarianceReport equivariance_check(const SolvPair& sp, const PairContext& ctx, const LinearizationPair& lp) {
  EquivarianceReport report;
  const GradedMap h = nil_cohomology_map(ctx, lp);
  const auto betti2 = ctx.action2.cohomology.betti();
  for (std::size_t j = 0; j < sp.ext1.quotient_dim(); ++j) {
    GradedMap delta2 = GradedMap::zero(betti2, betti2);
    for (std::size_t i = 0; i < sp.ext2.quotient_dim(); ++i)
      if (lp.phi_a(i, j) != 0) delta2 = delta2 + lp.phi_a(i, j) * ctx.action2.operators[i];
    for (std::size_t q = 0; q < h.degrees(); ++q) {
      const Matrix defect = h[q] * delta2[q] - ctx.action1.operators[j][q] * h[q];
      if (!defect.is_zero()) report.failures.push_back({j, q, defect});
    }
  }
  if (!report.failures.empty()) {
    const auto& first = report.failures.front();
    report.detail = "equivariance fails for basis vector " + std::to_string(first.basis_index) +
                    " of a1 in degree " + std::to_string(first.degree);
  }
  try {
    check_cochain_map(twisted_model_map(ctx.model2, ctx.model1, lp.phi_a, h), ctx.model2.dga.complex,
                      ctx.model1.dga.complex);
  } catch (const NotCochainMap& e) {
    report.e1_cochain_map = false;
    report.detail += (report.detail.empty() ? "" : "; ") + std::string("twisted model map: ") + e.what();
  }
  report.ok = report.failures.empty() && report.e1_cochain_map;
  return report;
}

namespace {

Scalar orientation_sign(bool flip) { return flip ? Scalar(-1) : Scalar(1); }

CoincidenceTrace e2_route(const SolvPair& sp, const PairContext& ctx, const LinearizationPair& f,
                          const LinearizationPair& g, std::vector<std::size_t>& dims1,
                          std::vector<std::size_t>& dims2) {
  const auto& c1 = ctx.model1.dga.complex;
  const auto& c2 = ctx.model2.dga.complex;
  const CohomologyRing e2_1 = cohomology(ctx.model1.dga);
  const CohomologyRing e2_2 = cohomology(ctx.model2.dga);
  dims1 = e2_1.betti();
  dims2 = e2_2.betti();
  const GradedMap ff = twisted_model_map(ctx.model2, ctx.model1, f.phi_a, nil_cohomology_map(ctx, f));
  const GradedMap gg = twisted_model_map(ctx.model2, ctx.model1, g.phi_a, nil_cohomology_map(ctx, g));
  const Matrix top = Matrix::identity(1);
  const PDStructure pd1 =
      pd_check(e2_1, top_class_orientation(e2_1, top, twisted_model_orientation(ctx.model1, sp.flip1 ? -1 : 1)));
  const PDStructure pd2 =
      pd_check(e2_2, top_class_orientation(e2_2, top, twisted_model_orientation(ctx.model2, sp.flip2 ? -1 : 1)));
  return coincidence(induced_map(ff, c2, e2_2, c1, e2_1), induced_map(gg, c2, e2_2, c1, e2_1), pd1, pd2);
}

CoincidenceTrace direct_route(const SolvPair& sp, const LinearizationPair& f, const LinearizationPair& g) {
  const DGA a1 = ce_dga(sp.g1());
  const DGA a2 = ce_dga(sp.g2());
  const CohomologyRing h1 = cohomology(a1);
  const CohomologyRing h2 = cohomology(a2);
  const Matrix top = Matrix::identity(1);
  const PDStructure pd1 = pd_check(h1, top_class_orientation(h1, top, orientation_sign(sp.flip1)));
  const PDStructure pd2 = pd_check(h2, top_class_orientation(h2, top, orientation_sign(sp.flip2)));
  const GradedMap hf = induced_map(pullback(*f.full), a2.complex, h2, a1.complex, h1);
  const GradedMap hg = induced_map(pullback(*g.full), a2.complex, h2, a1.complex, h1);
  return coincidence(hf, hg, pd1, pd2);
}

}  // namespace

Scalar top_class_orientation(const CohomologyRing& h, const Matrix& top_form, const Scalar& scale) {
  const std::size_t top = h.top();
  if (h.degrees.empty() || h.degrees[top].classes.dim() != 1 || h.degrees[top].cocycles.ambient_dim != top_form.rows())
    return scale;
  return scale * h.classes_of(top, top_form)(0, 0);
}

DetFormula det_formula(const SolvPair& sp, const LinearizationPair& f, const LinearizationPair& g) {
  DetFormula out;
  out.a = block_diag(f.phi_n.matrix, f.phi_a);
  out.b = block_diag(g.phi_n.matrix, g.phi_a);
  if (!out.a.is_square() || out.a.rows() != out.b.rows() || out.a.cols() != out.b.cols())
    throw DimensionMismatch("linearizations do not give square matrices of equal size");
  out.block_det = det(out.a - out.b);
  // Back to the input bases: A_input = T2 A T1^-1.
  out.value = out.block_det * det(sp.ext2.adapted_basis) / det(sp.ext1.adapted_basis) * orientation_sign(sp.flip1) *
              orientation_sign(sp.flip2);
  return out;
}

MainResult cross_validate(const SolvPair& sp, const LinearizationPair& f, const LinearizationPair& g,
                          const RouteOptions& options) {
  MainResult result;
  const PairContext ctx = make_context(sp);
  result.equivariance_f = equivariance_check(sp, ctx, f);
  result.equivariance_g = equivariance_check(sp, ctx, g);
  const bool admissible = result.equivariance_f.ok && result.equivariance_g.ok;
  const bool run_e2 = options.e2 && admissible;
  const bool run_direct = options.direct && f.full && g.full;
  const auto launch = options.parallel ? std::launch::async : std::launch::deferred;

  std::vector<std::size_t> dims1, dims2;
  auto det_job = std::async(launch, [&] { return det_formula(sp, f, g); });
  std::future<CoincidenceTrace> e2_job, direct_job;
  if (run_e2) e2_job = std::async(launch, [&] { return e2_route(sp, ctx, f, g, dims1, dims2); });
  if (run_direct) direct_job = std::async(launch, [&] { return direct_route(sp, f, g); });

  result.det = det_job.get();
  if (run_e2) {
    result.e2 = e2_job.get();
    result.e2_dims1 = dims1;
    result.e2_dims2 = dims2;
  }
  if (run_direct) result.direct = direct_job.get();

  std::ostringstream diag;
  if (options.e2 && !admissible) diag << "equivariance failed; E_2 route skipped. ";
  if (result.e2 && result.e2->value != result.det.value) result.agreement = false;
  if (result.direct && result.direct->value != result.det.value) result.agreement = false;
  if (!result.agreement) {
    diag << "routes disagree: det " << to_string(result.det.value);
    if (result.e2) diag << ", E_2 " << to_string(result.e2->value);
    if (result.direct) diag << ", direct " << to_string(result.direct->value);
  }
  result.diagnostics = diag.str();
  return result;
}

}  // namespace lef
