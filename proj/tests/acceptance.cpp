// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "lef/coincidence.hpp"
#include "lef/io.hpp"
#include "support.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>

using namespace lef;
using namespace lef::testing;
namespace fs = std::filesystem;

namespace {

const fs::path corpus = LEF_CORPUS_DIR;

struct Verdict {
  bool ok = true;
  std::ostringstream note;

  void fail(const std::string& why) {
    if (ok) note << why;
    ok = false;
  }
};

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct CorpusAlgebra {
  std::string name;
  LieAlgebra g;
};

std::vector<CorpusAlgebra> corpus_algebras() {
  std::vector<CorpusAlgebra> out;
  for (const auto& p : json_files(corpus / "algebras")) out.push_back({p.stem().string(), load_algebra(p).algebra});
  return out;
}

Matrix hom_of(const Json& map, std::size_t n) { return parse_matrix(map["hom"], n, n); }

// Each criterion returns its verdict; the harness prints it with the elapsed time.
Verdict exterior_coincidence_property() {
  Verdict v;
  std::mt19937 rng(20240917);
  std::size_t pairs = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 40; ++t, ++pairs) {
      const Matrix a = random_matrix(rng, n, n, 4, 3), b = random_matrix(rng, n, n, 4, 3);
      const HlpValues values = hlp_coincidence(a, b, n);
      if (values.lhs != leibniz_det(a - b)) v.fail("n = " + std::to_string(n) + ": PD trace differs from det(A - B)");
    }
  v.note << (v.ok ? "" : "; ") << pairs << " random pairs, n = 1..5";
  return v;
}

Verdict corpus_route_agreement() {
  Verdict v;
  std::size_t checked = 0;
  std::set<std::string> kinds;
  for (const auto& path : json_files(corpus / "problems")) {
    const ProblemFile p = load_problem(path);
    const Outcome o = coincide_report(p);
    const Json& r = o.report;
    if (!r["expect"]["met"].get<bool>()) v.fail(p.name + ": expectation not met");
    if (!r["equivariance"]["f"]["ok"].get<bool>() || !r["equivariance"]["g"]["ok"].get<bool>()) continue;
    ++checked;
    const Json& routes = r["routes"];
    if (!routes.contains("e2") || routes["e2"]["value"] != routes["det"]["value"])
      v.fail(p.name + ": E_2 route differs from det");
    const bool full = r["linearization"]["f"]["full"].get<bool>() && r["linearization"]["g"]["full"].get<bool>();
    if (full && (!routes.contains("direct") || routes["direct"]["value"] != routes["det"]["value"]))
      v.fail(p.name + ": direct route differs from det");
    if (!r["agreement"].get<bool>()) v.fail(p.name + ": " + r["diagnostics"].get<std::string>());
    const auto a1 = load_algebra(p.base_dir / p.algebra1).algebra;
    if (a1.is_abelian()) kinds.insert("torus" + std::to_string(a1.dim()));
    else if (is_nilpotent(a1) && full) kinds.insert("nilmanifold");
    else if (full) kinds.insert("solvmanifold full hom");
    else if (a1.dim() == 4) kinds.insert("bare pair dim 4");
  }
  for (const char* k : {"torus2", "torus3", "nilmanifold", "solvmanifold full hom", "bare pair dim 4"})
    if (!kinds.count(k)) v.fail(std::string("corpus lacks a ") + k + " problem");
  v.note << (v.ok ? "" : "; ") << checked << " admissible problems, det = E_2 (= direct for full homs)";
  return v;
}

Verdict trace_invariance() {
  Verdict v;
  std::mt19937 rng(20240918);
  std::size_t maps = 0;
  for (const auto& a : corpus_algebras()) {
    const FilteredComplex fc = hochschild_serre(derived_ideal(a.g));
    const auto ps = pages(fc, fc.pmax + 1);
    const std::size_t stab = stabilization(ps);
    const auto basis = filtered_cochain_map_basis(fc, fc);
    const CohomologyRing h = cohomology(fc.complex());
    for (int t = 0; t < 50; ++t, ++maps) {
      const GradedMap f = random_combination(basis, fc.complex().dims, fc.complex().dims, rng);
      const Scalar target = graded_lefschetz(induced_map(f, fc.complex(), h, fc.complex(), h));
      for (std::size_t r = 0; r <= stab; ++r)
        if (tot_alternating_trace(induced_page_map(f, fc, ps[r], fc, ps[r])) != target)
          v.fail(a.name + ": trace on E_" + std::to_string(r) + " differs from H*");
    }
  }
  v.note << (v.ok ? "" : "; ") << maps << " filtered self-maps over the corpus";
  return v;
}

Verdict cohomology_oracles() {
  Verdict v;
  for (const auto& a : corpus_algebras()) {
    const auto betti = cohomology(ce_dga(a.g)).betti();
    if (betti != betti_from(ce_by_evaluation(a.g), a.g.dim())) v.fail(a.name + ": Betti numbers differ from the rank oracle");
    if (a.g.is_abelian())
      for (std::size_t k = 0; k <= a.g.dim(); ++k)
        if (betti[k] != ExteriorBasis::binomial(a.g.dim(), k)) v.fail(a.name + ": not binomial");
    if (a.name == "h3" && betti != std::vector<std::size_t>{1, 2, 2, 1}) v.fail("h3 Betti numbers");
    if (a.name == "sol3" && betti != std::vector<std::size_t>{1, 1, 1, 1}) v.fail("sol3 Betti numbers");
  }
  v.note << (v.ok ? "" : "; ") << "abelian binomial, h3 (1,2,2,1), sol3 (1,1,1,1), rank oracle on all";
  return v;
}

Verdict pd_verification() {
  Verdict v;
  bool negative_seen = false;
  for (const auto& a : corpus_algebras()) {
    const CohomologyRing h = cohomology(ce_dga(a.g));
    if (!is_unimodular(a.g)) {
      negative_seen = true;
      try {
        pd_check(h);
        v.fail(a.name + ": non-unimodular algebra passed PD");
      } catch (const NotPD& e) {
        if (e.axiom() != PdAxiom::Top || e.degree() != a.g.dim())
          v.fail(a.name + ": wrong PD failure reason (" + e.what() + ")");
      }
      continue;
    }
    try {
      pd_check(h);
      const FilteredComplex fc = hochschild_serre(derived_ideal(a.g));
      const auto ps = pages(fc, fc.pmax + 1);
      const std::size_t stab = stabilization(ps);
      for (std::size_t r = 0; r <= stab; ++r) tot_pd_structure(fc, ps[r]);
    } catch (const NotPD& e) {
      v.fail(a.name + ": " + e.what());
    }
  }
  if (!negative_seen) v.fail("no non-unimodular corpus algebra");
  v.note << (v.ok ? "" : "; ") << "H* and Tot E_r (r <= stabilization) of PD type; aff2 fails top axiom in degree 2";
  return v;
}

Verdict degenerate_identities() {
  Verdict v;
  std::size_t tori = 0, nilmanifolds = 0;
  for (const auto& a : corpus_algebras()) {
    long euler = 0;
    const auto betti = cohomology(ce_dga(a.g)).betti();
    for (std::size_t k = 0; k < betti.size(); ++k) euler += (k % 2 ? -1 : 1) * static_cast<long>(betti[k]);
    if (euler != 0) v.fail(a.name + ": Euler characteristic " + std::to_string(euler));
  }
  for (const auto& path : json_files(corpus / "problems")) {
    ProblemFile p = load_problem(path);
    const Outcome o = coincide_report(p);
    if (o.exit_code != 0) continue;
    // L(f, f) on every route.
    ProblemFile same = p;
    same.g = same.f;
    const Json r = coincide_report(same).report;
    for (const auto& [route, body] : r["routes"].items())
      if (body["value"] != "0") v.fail(p.name + ": L(f, f) != 0 on route " + route);
    // Torus (trivial ideal) and nilmanifold (ideal = g) against the exterior computation.
    const LieAlgebra g1 = load_algebra(p.base_dir / p.algebra1).algebra;
    const bool torus = g1.is_abelian();
    const bool nil = p.ideal == "full";
    if ((torus || nil) && p.f.contains("hom") && p.g.contains("hom")) {
      ++(torus ? tori : nilmanifolds);
      const std::size_t n = g1.dim();
      const Scalar hl = hlp_coincidence(hom_of(p.f, n), hom_of(p.g, n), n).lhs;
      if (to_string(hl) != o.report["L"]) v.fail(p.name + ": differs from the exterior computation");
      if (torus && o.report["linearization"]["f"]["phi_n"].size() != 0) v.fail(p.name + ": n is not 0");
      if (nil && o.report["linearization"]["f"]["phi_a"].size() != 0) v.fail(p.name + ": a is not 0");
    }
  }
  if (tori == 0 || nilmanifolds == 0) v.fail("corpus lacks torus or nilmanifold problems");
  v.note << (v.ok ? "" : "; ") << "L(f,f) = 0, Euler characteristic 0, " << tori << " torus and " << nilmanifolds
         << " nilmanifold problems match the exterior computation";
  return v;
}

Verdict equivariance_gate() {
  Verdict v;
  std::mt19937 rng(20240919);
  struct Family {
    LieAlgebra g;
    Matrix (*hom)(std::mt19937&);
  };
  std::size_t pairs = 0;
  for (const auto& fam : {Family{heisenberg3(), random_h3_hom}, Family{sol3(), random_sol3_hom},
                          Family{sol4(), random_sol4_hom}}) {
    const SolvPair sp = make_solv_pair(fam.g, fam.g);
    const PairContext ctx = make_context(sp);
    for (int t = 0; t < 20; ++t, ++pairs)
      if (!equivariance_check(sp, ctx, linearize_from_hom(sp, fam.hom(rng))).ok)
        v.fail("linearization of a homomorphism failed equivariance");
  }
  for (const auto& path : json_files(corpus / "problems")) {
    const ProblemFile p = load_problem(path);
    const Json r = coincide_report(p).report;
    for (const char* m : {"f", "g"})
      if (r["linearization"][m]["full"].get<bool>() && !r["equivariance"][m]["ok"].get<bool>())
        v.fail(p.name + ": full hom failed equivariance");
    if (p.expect && p.expect->equivariance_fails) {
      const Json& f = r["equivariance"]["f"];
      if (f["ok"].get<bool>() || f["failures"].empty()) {
        v.fail(p.name + ": expected an equivariance failure");
        continue;
      }
      const Json& first = f["failures"][0];
      if (first["degree"] != *p.expect->degree) v.fail(p.name + ": failure in the wrong degree");
      const Matrix defect = parse_matrix(first["defect"], first["defect"].size(),
                                         first["defect"].empty() ? 0 : first["defect"][0].size());
      if (defect.is_zero()) v.fail(p.name + ": zero defect");
      v.note << "sol3 swap pair fails in degree " << first["degree"].get<std::size_t>() << "; ";
    }
  }
  v.note << pairs << " random homomorphism linearizations pass";
  return v;
}

Verdict determinism() {
  Verdict v;
  const std::string a = render_machine(corpus_report(corpus, 1).report);
  const std::string b = render_machine(corpus_report(corpus, 1).report);
  const std::string c = render_machine(corpus_report(corpus, 4).report);
  if (a != b) v.fail("two runs differ");
  if (a != c) v.fail("jobs 1 and jobs 4 differ");
  v.note << (v.ok ? "" : "; ") << "corpus report " << a.size() << " bytes, identical across runs and --jobs 1/4";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria{
      {1, "PD coincidence on exterior algebras equals det(A - B)", exterior_coincidence_property, 10},
      {2, "corpus routes agree exactly", corpus_route_agreement, 30},
      {3, "alternating trace invariant across pages", trace_invariance, 0},
      {4, "Betti numbers match the oracles", cohomology_oracles, 0},
      {5, "Poincare duality of H* and Tot E_r", pd_verification, 0},
      {6, "degenerate-case identities", degenerate_identities, 0},
      {7, "equivariance gate", equivariance_gate, 0},
      {8, "deterministic corpus reports", determinism, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds)
      v.fail("took " + std::to_string(seconds) + " s, budget " + std::to_string(c.budget_seconds) + " s");
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << seconds;
    std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << v.note.str()
              << ", " << time.str() << " s)\n";
    if (!v.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
