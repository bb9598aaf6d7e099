#pragma once

#include "lef/coincidence.hpp"
#include "lef/lie.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace lef {

using Json = nlohmann::ordered_json;

struct AlgebraAsserts {
  std::optional<bool> unimodular;
  std::optional<bool> solvable;
  std::optional<bool> mostow;

  bool empty() const { return !unimodular && !solvable && !mostow; }
};

struct AlgebraFile {
  LieAlgebra algebra;
  AlgebraAsserts asserts;
};

// Throws ParseError on malformed documents (the algebra itself is not validated).
AlgebraFile parse_algebra(const std::string& text);
AlgebraFile load_algebra(const std::filesystem::path& path);
// Canonical form: keys dim, basis, brackets, asserts; brackets sorted by (i, j), terms by k.
std::string emit_algebra(const AlgebraFile& file);

Json scalar_json(const Scalar& s);
Scalar parse_scalar_json(const Json& j);
Json matrix_json(const Matrix& m);
// Rows of scalars; an empty list stands for any matrix with no entries of the expected shape.
Matrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols);
Json sizes_json(const std::vector<std::size_t>& v);

std::string read_file(const std::filesystem::path& path);
// Machine stream: two-space indented JSON plus a trailing newline.
std::string render_machine(const Json& report);

struct ProblemExpectation {
  std::optional<Scalar> value;
  bool equivariance_fails = false;
  std::optional<std::size_t> degree;
};

struct ProblemFile {
  std::string name;
  std::string algebra1;  // as written in the file
  std::string algebra2;
  std::filesystem::path base_dir;
  Json f;
  Json g;
  bool flip1 = false;
  bool flip2 = false;
  bool route_e2 = true;
  bool route_direct = true;
  std::optional<std::size_t> pages;  // trace values on pages 0..pages
  Json ideal;             // "derived", "full" or a list of vectors
  std::optional<ProblemExpectation> expect;
};

ProblemFile parse_problem(const std::string& text, const std::filesystem::path& base_dir);
ProblemFile load_problem(const std::filesystem::path& path);

IdealChoice parse_ideal(const Json& j, std::size_t dim);

struct RunOptions {
  bool parallel = false;
  std::optional<bool> flip1;  // overrides the file
  std::optional<bool> flip2;
  std::optional<Json> ideal;
};

struct Outcome {
  Json report;
  int exit_code = 0;  // 0 ok, 1 validation or equivariance failure, 3 agreement failure
};

Outcome validate_report(const std::string& name, const AlgebraFile& file);
Outcome cohomology_report(const std::string& name, const AlgebraFile& file, bool representatives);
// Pages 0..last; without `last`, up to one page past the base dimension.
Outcome spectral_report(const std::string& name, const AlgebraFile& file, const Json& ideal,
                        std::optional<std::size_t> last, bool parallel);
Outcome coincide_report(const ProblemFile& problem, const RunOptions& options = {});

/// Every algebra in dir/algebras and every problem in dir/problems, in file name
/// order. Problems run on up to `jobs` threads; the report does not depend on it.
Outcome corpus_report(const std::filesystem::path& dir, std::size_t jobs);

std::string render_human(const Json& report);

}  // namespace lef
