#include "lef/io.hpp"

#include "lef/errors.hpp"
#include "lef/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace lef {

namespace fs = std::filesystem;

namespace {

void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw ParseError("unknown key \"" + key + "\" in " + where);
}

std::size_t get_index(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned()) throw ParseError(what + " must be a non-negative integer");
  return j.get<std::size_t>();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

Json scalar_json(const Scalar& s) { return to_string(s); }

Scalar parse_scalar_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  throw ParseError("scalar must be a \"p/q\" string or an integer");
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw ParseError("matrix must be a list of rows");
  if (j.empty()) {
    if (rows * cols != 0)
      throw ParseError("empty matrix given where a " + std::to_string(rows) + "x" + std::to_string(cols) +
                       " matrix is expected");
    return Matrix(rows, cols);
  }
  if (j.size() != rows) throw ParseError("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ParseError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = parse_scalar_json(j[i][c]);
  }
  return m;
}

Json sizes_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

namespace {

Json scalars_json(const std::vector<Scalar>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_json(x));
  return a;
}

Json vector_json(const Vector& v) { return scalars_json(v); }

}  // namespace

AlgebraFile parse_algebra(const std::string& text) {
  const Json j = parse_json(text);
  require_keys(j, {"dim", "basis", "brackets", "asserts"}, "algebra file");
  if (!j.contains("dim")) throw ParseError("algebra file needs \"dim\"");
  const std::size_t n = get_index(j["dim"], "dim");
  if (n > 20) throw ParseError("dimension " + std::to_string(n) + " is too large");

  std::vector<std::string> names;
  if (j.contains("basis")) {
    if (!j["basis"].is_array() || j["basis"].size() != n)
      throw ParseError("\"basis\" must list " + std::to_string(n) + " names");
    for (const auto& b : j["basis"]) {
      if (!b.is_string()) throw ParseError("basis names must be strings");
      names.push_back(b.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
  }

  std::vector<BracketTerm> terms;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) throw ParseError("\"brackets\" must be a list");
    for (const auto& b : j["brackets"]) {
      require_keys(b, {"i", "j", "terms"}, "bracket");
      if (!b.contains("i") || !b.contains("j") || !b.contains("terms"))
        throw ParseError("bracket needs \"i\", \"j\" and \"terms\"");
      const std::size_t i = get_index(b["i"], "bracket index i");
      const std::size_t jj = get_index(b["j"], "bracket index j");
      if (i >= jj || jj >= n)
        throw ParseError("bracket (" + std::to_string(i) + ", " + std::to_string(jj) + ") needs i < j < dim");
      if (!seen.insert({i, jj}).second)
        throw ParseError("bracket (" + std::to_string(i) + ", " + std::to_string(jj) + ") given twice");
      if (!b["terms"].is_array()) throw ParseError("bracket terms must be a list");
      std::set<std::size_t> ks;
      for (const auto& t : b["terms"]) {
        require_keys(t, {"k", "coeff"}, "bracket term");
        if (!t.contains("k") || !t.contains("coeff")) throw ParseError("bracket term needs \"k\" and \"coeff\"");
        const std::size_t k = get_index(t["k"], "bracket term k");
        if (k >= n) throw ParseError("bracket term k = " + std::to_string(k) + " out of range");
        if (!ks.insert(k).second) throw ParseError("bracket term k = " + std::to_string(k) + " given twice");
        terms.push_back({i, jj, k, parse_scalar_json(t["coeff"])});
      }
    }
  }

  AlgebraFile file;
  file.algebra = LieAlgebra(std::move(names), terms);
  if (j.contains("asserts")) {
    require_keys(j["asserts"], {"unimodular", "solvable", "mostow"}, "asserts");
    auto flag = [&](const char* key) -> std::optional<bool> {
      if (!j["asserts"].contains(key)) return std::nullopt;
      if (!j["asserts"][key].is_boolean()) throw ParseError(std::string("assert \"") + key + "\" must be a boolean");
      return j["asserts"][key].get<bool>();
    };
    file.asserts = {flag("unimodular"), flag("solvable"), flag("mostow")};
  }
  return file;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

AlgebraFile load_algebra(const fs::path& path) { return parse_algebra(read_file(path)); }

std::string render_machine(const Json& report) { return report.dump(2) + "\n"; }

std::string emit_algebra(const AlgebraFile& file) {
  const LieAlgebra& g = file.algebra;
  Json j;
  j["dim"] = g.dim();
  j["basis"] = g.names();
  Json brackets = Json::array();
  const auto terms = g.terms();
  for (std::size_t t = 0; t < terms.size();) {
    Json b;
    b["i"] = terms[t].i;
    b["j"] = terms[t].j;
    b["terms"] = Json::array();
    const std::size_t i = terms[t].i, jj = terms[t].j;
    for (; t < terms.size() && terms[t].i == i && terms[t].j == jj; ++t) {
      Json term;
      term["k"] = terms[t].k;
      term["coeff"] = scalar_json(terms[t].coeff);
      b["terms"].push_back(std::move(term));
    }
    brackets.push_back(std::move(b));
  }
  j["brackets"] = std::move(brackets);
  if (!file.asserts.empty()) {
    Json a = Json::object();
    if (file.asserts.unimodular) a["unimodular"] = *file.asserts.unimodular;
    if (file.asserts.solvable) a["solvable"] = *file.asserts.solvable;
    if (file.asserts.mostow) a["mostow"] = *file.asserts.mostow;
    j["asserts"] = std::move(a);
  }
  return render_machine(j);
}

IdealChoice parse_ideal(const Json& j, std::size_t dim) {
  if (j.is_null()) return {};
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "derived") return {};
    if (s == "full") return {IdealKind::Full, {}};
    throw ParseError("ideal must be \"derived\", \"full\" or a list of vectors");
  }
  if (!j.is_array()) throw ParseError("ideal must be \"derived\", \"full\" or a list of vectors");
  // Vectors are listed one per entry; store them as columns.
  const Matrix rows = parse_matrix(j, j.size(), dim);
  return {IdealKind::Custom, rows.transpose()};
}

ProblemFile parse_problem(const std::string& text, const fs::path& base_dir) {
  const Json j = parse_json(text);
  require_keys(j, {"name", "algebra1", "algebra2", "f", "g", "orientation", "routes", "pages", "ideal", "expect"},
               "problem file");
  ProblemFile p;
  p.base_dir = base_dir;
  for (const char* key : {"algebra1", "algebra2", "f", "g"})
    if (!j.contains(key)) throw ParseError(std::string("problem file needs \"") + key + "\"");
  if (!j["algebra1"].is_string() || !j["algebra2"].is_string())
    throw ParseError("algebra references must be paths");
  p.algebra1 = j["algebra1"].get<std::string>();
  p.algebra2 = j["algebra2"].get<std::string>();
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("\"name\" must be a string");
    p.name = j["name"].get<std::string>();
  }
  for (const char* key : {"f", "g"}) {
    const Json& m = j[key];
    require_keys(m, {"hom", "phi_n", "phi_a"}, std::string("map \"") + key + "\"");
    const bool hom = m.contains("hom");
    const bool pair = m.contains("phi_n") && m.contains("phi_a");
    if (hom == pair || (!hom && m.size() != 2) || (hom && m.size() != 1))
      throw ParseError(std::string("map \"") + key + "\" needs either \"hom\" or both \"phi_n\" and \"phi_a\"");
  }
  p.f = j["f"];
  p.g = j["g"];
  if (j.contains("orientation")) {
    require_keys(j["orientation"], {"flip1", "flip2"}, "orientation");
    for (const auto& [key, value] : j["orientation"].items())
      if (!value.is_boolean()) throw ParseError("orientation flags must be booleans");
    p.flip1 = j["orientation"].value("flip1", false);
    p.flip2 = j["orientation"].value("flip2", false);
  }
  if (j.contains("routes")) {
    if (!j["routes"].is_array()) throw ParseError("\"routes\" must be a list");
    p.route_e2 = p.route_direct = false;
    for (const auto& r : j["routes"]) {
      const std::string s = r.is_string() ? r.get<std::string>() : "";
      if (s == "det") continue;
      if (s == "e2") p.route_e2 = true;
      else if (s == "direct") p.route_direct = true;
      else throw ParseError("unknown route " + r.dump());
    }
  }
  if (j.contains("pages")) p.pages = get_index(j["pages"], "pages");
  if (j.contains("ideal")) p.ideal = j["ideal"];
  if (j.contains("expect")) {
    const Json& e = j["expect"];
    require_keys(e, {"L", "equivariance", "degree"}, "expect");
    ProblemExpectation ex;
    if (e.contains("L")) ex.value = parse_scalar_json(e["L"]);
    if (e.contains("equivariance")) {
      if (e["equivariance"] != "fail") throw ParseError("expect.equivariance can only be \"fail\"");
      ex.equivariance_fails = true;
    }
    if (e.contains("degree")) ex.degree = get_index(e["degree"], "expect.degree");
    p.expect = ex;
  }
  return p;
}

ProblemFile load_problem(const fs::path& path) {
  ProblemFile p = parse_problem(read_file(path), path.parent_path());
  if (p.name.empty()) p.name = path.stem().string();
  return p;
}

namespace {

Json pd_json(const std::function<PDStructure()>& build, bool with_pairing) {
  Json out;
  try {
    const PDStructure pd = build();
    out["ok"] = true;
    out["orientation"] = scalar_json(pd.orientation);
    if (with_pairing) {
      Json pairing = Json::array();
      for (const auto& m : pd.pairing) pairing.push_back(matrix_json(m));
      out["pairing"] = std::move(pairing);
    }
  } catch (const NotPD& e) {
    out["ok"] = false;
    out["axiom"] = to_string(e.axiom());
    out["degree"] = e.degree();
    out["reason"] = e.what();
  }
  return out;
}

std::string ideal_kind_name(const Json& ideal) {
  if (ideal.is_null()) return "derived";
  if (ideal.is_string()) return ideal.get<std::string>();
  return "custom";
}

Scalar euler(const std::vector<std::size_t>& betti) {
  long e = 0;
  for (std::size_t k = 0; k < betti.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long>(betti[k]);
  return Scalar(e);
}

}  // namespace

Outcome validate_report(const std::string& name, const AlgebraFile& file) {
  const LieAlgebra& g = file.algebra;
  Outcome out;
  Json& r = out.report;
  r["command"] = "validate";
  r["algebra"] = name;
  r["dim"] = g.dim();
  try {
    validate(g);
    r["jacobi"] = Json{{"ok", true}};
  } catch (const JacobiViolation& e) {
    r["jacobi"] = Json{{"ok", false}, {"triple", {e.i, e.j, e.k}}, {"defect", vector_json(e.defect)}};
    out.exit_code = 1;
    return out;
  }
  r["unimodular"] = is_unimodular(g);
  r["solvable"] = is_solvable(g);
  r["derived_nilpotent"] = is_nilpotent(restrict_to(g, derived_subalgebra(g)));
  r["complete_solvability"] =
      complete_solvability_check(g) == SplitStatus::Verified ? "verified" : "unverified";
  if (!file.asserts.empty()) {
    Json a = Json::object();
    if (file.asserts.unimodular) a["unimodular"] = *file.asserts.unimodular;
    if (file.asserts.solvable) a["solvable"] = *file.asserts.solvable;
    if (file.asserts.mostow) a["mostow"] = *file.asserts.mostow;
    r["asserts"] = std::move(a);
    bool consistent = true;
    if (file.asserts.unimodular && *file.asserts.unimodular != r["unimodular"].get<bool>()) consistent = false;
    if (file.asserts.solvable && *file.asserts.solvable != r["solvable"].get<bool>()) consistent = false;
    r["asserts_consistent"] = consistent;
    if (!consistent) out.exit_code = 1;
  }
  return out;
}

Outcome cohomology_report(const std::string& name, const AlgebraFile& file, bool representatives) {
  const LieAlgebra& g = file.algebra;
  Outcome out;
  Json& r = out.report;
  r["command"] = "cohomology";
  r["algebra"] = name;
  r["dim"] = g.dim();
  try {
    validate(g);
  } catch (const JacobiViolation& e) {
    r["error"] = e.what();
    out.exit_code = 1;
    return out;
  }
  const DGA a = ce_dga(g);
  const CohomologyRing h = cohomology(a);
  r["betti"] = sizes_json(h.betti());
  r["euler"] = scalar_json(euler(h.betti()));
  r["unimodular"] = is_unimodular(g);
  r["pd"] = pd_json([&] { return pd_check(h, top_class_orientation(h, Matrix::identity(1), 1)); }, true);
  if (representatives) {
    Json reps = Json::array();
    for (const auto& d : h.degrees) reps.push_back(matrix_json(d.representatives));
    r["representatives"] = std::move(reps);
  }
  return out;
}

Outcome spectral_report(const std::string& name, const AlgebraFile& file, const Json& ideal,
                        std::optional<std::size_t> last_wanted, bool parallel) {
  const LieAlgebra& g = file.algebra;
  Outcome out;
  Json& r = out.report;
  r["command"] = "spectral";
  r["algebra"] = name;
  r["dim"] = g.dim();
  ExtensionData ext;
  try {
    validate(g);
    ext = extension_for(g, parse_ideal(ideal, g.dim()));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r["error"] = e.what();
    out.exit_code = 1;
    return out;
  }
  r["ideal"] = Json{{"kind", ideal_kind_name(ideal)}, {"dim", ext.ideal_dim()},
                    {"basis", matrix_json(ext.ideal.vectors.transpose())}};
  r["quotient_dim"] = ext.quotient_dim();

  const FilteredComplex fc = hochschild_serre(ext);
  const std::size_t pages_wanted = last_wanted.value_or(fc.pmax + 1);
  const std::size_t last = std::max(pages_wanted, fc.pmax + 1);
  const std::vector<SpectralPage> ps = pages(fc, last, {parallel});
  Json pages_json = Json::array();
  for (const auto& e : ps) {
    if (e.r > pages_wanted) break;
    check_page(e);
    Json pj;
    pj["r"] = e.r;
    Json cells = Json::array();
    for (std::size_t k = 0; k <= e.top(); ++k)
      for (std::size_t p = 0; p <= e.pmax && p <= k; ++p) {
        if (k - p > ext.ideal_dim()) continue;
        cells.push_back(Json{{"p", p}, {"q", k - p}, {"dim", e.cell(p, k).dim()},
                             {"d_rank", rank(e.differential[k][p])}});
      }
    pj["cells"] = std::move(cells);
    pj["tot_dims"] = sizes_json(e.tot_dims());
    pj["pd"] = pd_json([&] { return tot_pd_structure(fc, e); }, false);
    pages_json.push_back(std::move(pj));
  }
  r["pages"] = std::move(pages_json);
  r["stabilization"] = stabilization(ps);
  r["betti"] = sizes_json(cohomology(fc.complex()).betti());
  return out;
}

namespace {

LinearizationPair linearization_from_json(const SolvPair& sp, const Json& m) {
  const std::size_t n = sp.g1().dim();
  if (m.contains("hom")) return linearize_from_hom(sp, parse_matrix(m["hom"], n, n));
  const std::size_t k1 = sp.ext1.ideal_dim(), k2 = sp.ext2.ideal_dim();
  const std::size_t m1 = sp.ext1.quotient_dim(), m2 = sp.ext2.quotient_dim();
  return make_linearization(sp, parse_matrix(m["phi_n"], k2, k1), parse_matrix(m["phi_a"], m2, m1));
}

Json equivariance_json(const EquivarianceReport& e) {
  Json j;
  j["ok"] = e.ok;
  j["e1_cochain_map"] = e.e1_cochain_map;
  Json failures = Json::array();
  for (const auto& f : e.failures)
    failures.push_back(Json{{"basis", f.basis_index}, {"degree", f.degree}, {"defect", matrix_json(f.defect)}});
  j["failures"] = std::move(failures);
  j["detail"] = e.detail;
  return j;
}

Json trace_json(const CoincidenceTrace& t) {
  return Json{{"traces", scalars_json(t.traces)}, {"value", scalar_json(t.value)}};
}

fs::path resolve(const ProblemFile& p, const std::string& ref) {
  const fs::path path(ref);
  return path.is_absolute() ? path : p.base_dir / path;
}

}  // namespace

Outcome coincide_report(const ProblemFile& problem, const RunOptions& options) {
  Outcome out;
  Json& r = out.report;
  r["command"] = "coincide";
  r["problem"] = problem.name;
  r["algebra1"] = problem.algebra1;
  r["algebra2"] = problem.algebra2;
  const bool flip1 = options.flip1.value_or(problem.flip1);
  const bool flip2 = options.flip2.value_or(problem.flip2);
  const Json ideal = options.ideal.value_or(problem.ideal);
  r["orientation"] = Json{{"flip1", flip1}, {"flip2", flip2}};
  r["ideal"] = ideal_kind_name(ideal);

  const LieAlgebra g1 = load_algebra(resolve(problem, problem.algebra1)).algebra;
  const LieAlgebra g2 = load_algebra(resolve(problem, problem.algebra2)).algebra;
  SolvPair sp;
  LinearizationPair f, g;
  try {
    sp = make_solv_pair(g1, g2, parse_ideal(ideal, g1.dim()), parse_ideal(ideal, g2.dim()), flip1, flip2);
    f = linearization_from_json(sp, problem.f);
    g = linearization_from_json(sp, problem.g);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r["error"] = e.what();
    out.exit_code = 1;
    return out;
  }
  Json lin;
  for (const auto& [key, lp] : {std::pair<const char*, const LinearizationPair*>{"f", &f}, {"g", &g}})
    lin[key] = Json{{"phi_n", matrix_json(lp->phi_n.matrix)}, {"phi_a", matrix_json(lp->phi_a)},
                    {"full", lp->full.has_value()}};
  r["linearization"] = std::move(lin);

  const MainResult m =
      cross_validate(sp, f, g, RouteOptions{problem.route_e2, problem.route_direct, options.parallel});
  r["equivariance"] = Json{{"f", equivariance_json(m.equivariance_f)}, {"g", equivariance_json(m.equivariance_g)}};
  Json routes;
  routes["det"] = Json{{"A", matrix_json(m.det.a)}, {"B", matrix_json(m.det.b)},
                       {"block_det", scalar_json(m.det.block_det)}, {"value", scalar_json(m.det.value)}};
  if (m.e2) {
    Json e2 = trace_json(*m.e2);
    e2["tot_dims1"] = sizes_json(m.e2_dims1);
    e2["tot_dims2"] = sizes_json(m.e2_dims2);
    routes["e2"] = std::move(e2);
  }
  if (m.direct) routes["direct"] = trace_json(*m.direct);
  r["routes"] = std::move(routes);

  bool pages_agree = true;
  if (problem.pages && f.full && g.full && m.equivariance_f.ok && m.equivariance_g.ok) {
    const FilteredComplex fc1 = hochschild_serre(sp.ext1);
    const FilteredComplex fc2 = hochschild_serre(sp.ext2);
    const GradedMap pf = pullback(*f.full);
    const GradedMap pg = pullback(*g.full);
    Json values = Json::array();
    for (std::size_t rr = 0; rr <= *problem.pages; ++rr) {
      const SpectralPage e1 = page(fc1, rr, {options.parallel});
      const SpectralPage e2 = page(fc2, rr, {options.parallel});
      const Scalar v = coincidence_on_page(pf, pg, fc1, e1, fc2, e2, flip1 ? -1 : 1, flip2 ? -1 : 1).value;
      if (v != m.det.value) pages_agree = false;
      values.push_back(Json{{"r", rr}, {"value", scalar_json(v)}});
    }
    r["page_values"] = std::move(values);
  }

  const bool agreement = m.agreement && pages_agree;
  r["L"] = scalar_json(m.det.value);
  r["abs_L"] = scalar_json(m.abs_value());
  r["agreement"] = agreement;
  r["diagnostics"] = pages_agree ? m.diagnostics : m.diagnostics + "page values disagree with det";

  const bool equivariant = m.equivariance_f.ok && m.equivariance_g.ok;
  if (!equivariant) out.exit_code = 1;
  else if (!agreement) out.exit_code = 3;

  if (problem.expect) {
    const auto& ex = *problem.expect;
    bool met = true;
    if (ex.value && (*ex.value != m.det.value || !agreement)) met = false;
    if (ex.equivariance_fails) {
      const EquivarianceReport& bad = m.equivariance_f.ok ? m.equivariance_g : m.equivariance_f;
      if (equivariant) met = false;
      else if (ex.degree && (bad.failures.empty() || bad.failures.front().degree != *ex.degree)) met = false;
    } else if (!equivariant) {
      met = false;
    }
    r["expect"] = Json{{"met", met}};
  }
  return out;
}

namespace {

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return out;
}

template <class F>
void run_parallel(std::size_t count, std::size_t jobs, F work) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) work(i);
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < std::min(jobs, count); ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
}

Json error_json(const std::string& file, const std::exception& e) {
  return Json{{"file", file}, {"error", e.what()}};
}

}  // namespace

Outcome corpus_report(const fs::path& dir, std::size_t jobs) {
  if (jobs == 0) jobs = 1;
  if (!fs::is_directory(dir)) throw ParseError("cannot read corpus directory " + dir.string());
  const auto algebra_paths = json_files(dir / "algebras");
  const auto problem_paths = json_files(dir / "problems");

  std::vector<Json> algebras(algebra_paths.size());
  std::vector<bool> algebra_ok(algebra_paths.size(), true);
  run_parallel(algebra_paths.size(), jobs, [&](std::size_t i) {
    const std::string file = algebra_paths[i].filename().string();
    try {
      const AlgebraFile a = load_algebra(algebra_paths[i]);
      Json entry;
      entry["file"] = file;
      Outcome v = validate_report(file, a);
      entry["validate"] = std::move(v.report);
      if (v.exit_code == 0) {
        entry["cohomology"] = cohomology_report(file, a, false).report;
        if (is_solvable(a.algebra)) entry["spectral"] = spectral_report(file, a, Json(), std::nullopt, false).report;
      } else {
        algebra_ok[i] = false;
      }
      algebras[i] = std::move(entry);
    } catch (const std::exception& e) {
      algebras[i] = error_json(file, e);
      algebra_ok[i] = false;
    }
  });

  std::vector<Json> problems(problem_paths.size());
  std::vector<int> codes(problem_paths.size(), 0);
  std::vector<bool> met(problem_paths.size(), true);
  run_parallel(problem_paths.size(), jobs, [&](std::size_t i) {
    const std::string file = problem_paths[i].filename().string();
    try {
      Outcome o = coincide_report(load_problem(problem_paths[i]));
      codes[i] = o.exit_code;
      if (o.report.contains("expect")) met[i] = o.report["expect"]["met"].get<bool>();
      else met[i] = o.exit_code == 0;
      problems[i] = Json{{"file", file}, {"exit_code", o.exit_code}, {"report", std::move(o.report)}};
    } catch (const ParseError& e) {
      codes[i] = 2;
      met[i] = false;
      problems[i] = error_json(file, e);
    } catch (const std::exception& e) {
      codes[i] = 1;
      met[i] = false;
      problems[i] = error_json(file, e);
    }
  });

  Outcome out;
  Json& r = out.report;
  r["command"] = "corpus";
  r["algebras"] = Json(algebras);
  r["problems"] = Json(problems);
  const auto passed = static_cast<std::size_t>(std::count(met.begin(), met.end(), true));
  r["summary"] = Json{{"algebras", algebras.size()},
                      {"problems", problems.size()},
                      {"expectations_met", passed},
                      {"expectations_failed", problems.size() - passed}};
  if (passed != problems.size()) out.exit_code = 1;
  // An agreement failure on an admissible input outranks everything else.
  for (std::size_t i = 0; i < codes.size(); ++i)
    if (codes[i] == 3) out.exit_code = 3;
  return out;
}

namespace {

bool is_matrix(const Json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const Json& row) {
           return row.is_array() && std::all_of(row.begin(), row.end(), [](const Json& x) { return x.is_primitive(); });
         });
}

std::string primitive(const Json& j) {
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string label(const std::string& key) { return key == "derived_nilpotent" ? "[g,g] nilpotent" : key; }

void render(const Json& j, std::size_t indent, std::ostringstream& out) {
  const std::string pad(indent, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_primitive()) {
      const std::string text = primitive(value);
      out << pad << label(key) << ":" << (text.empty() ? "" : " ") << text << "\n";
    } else if (value.is_array() && std::all_of(value.begin(), value.end(), [](const Json& x) { return x.is_primitive(); })) {
      out << pad << label(key) << ":";
      for (const auto& x : value) out << " " << primitive(x);
      out << "\n";
    } else if (is_matrix(value)) {
      out << pad << label(key) << ":\n";
      for (const auto& row : value) {
        out << pad << "  [";
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << primitive(row[c]);
        out << "]\n";
      }
    } else if (value.is_array()) {
      out << pad << label(key) << ":\n";
      for (const auto& item : value) {
        if (item.is_object() && std::all_of(item.begin(), item.end(), [](const Json& x) { return x.is_primitive(); })) {
          out << pad << "  -";
          const char* sep = " ";
          for (const auto& [k, v] : item.items()) {
            out << sep << label(k) << " " << primitive(v);
            sep = ", ";
          }
          out << "\n";
        } else if (item.is_object()) {
          std::ostringstream inner;
          render(item, indent + 4, inner);
          std::string text = inner.str();
          if (text.size() >= indent + 4) text.replace(indent + 2, 2, "- ");
          out << text;
        } else if (is_matrix(item)) {
          out << pad << "  -\n";
          for (const auto& row : item) {
            out << pad << "    [";
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << primitive(row[c]);
            out << "]\n";
          }
        } else {
          out << pad << "  - " << item.dump() << "\n";
        }
      }
    } else {
      out << pad << label(key) << ":\n";
      render(value, indent + 2, out);
    }
  }
}

}  // namespace

std::string render_human(const Json& report) {
  std::ostringstream out;
  render(report, 0, out);
  return out.str();
}

}  // namespace lef
