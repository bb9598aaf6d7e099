// solvlef: command-line front end for the coincidence library.

#include "lef/errors.hpp"
#include "lef/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string format = "human";
  bool parallel = false;
};

int emit(const Common& c, const lef::Outcome& out) {
  std::cout << (c.format == "machine" ? lef::render_machine(out.report) : lef::render_human(out.report));
  return out.exit_code;
}

lef::Json ideal_option(const std::string& text) {
  if (text.empty() || text == "derived" || text == "full") return text.empty() ? lef::Json() : lef::Json(text);
  // Otherwise a JSON list of vectors, e.g. '[[0,1,0],[0,0,1]]'.
  try {
    return lef::Json::parse(text);
  } catch (const lef::Json::parse_error&) {
    throw lef::ParseError("--ideal takes derived, full or a JSON list of vectors");
  }
}

fs::path corpus_dir(const std::string& given) {
  if (!given.empty()) return given;
  if (const char* env = std::getenv("LEF_CORPUS_DIR"); env && *env) return env;
  return LEF_DEFAULT_CORPUS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lefschetz coincidence numbers of maps between solvmanifolds, computed on Lie algebras"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "output stream")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();

  std::string path;
  bool representatives = false;
  std::string ideal;
  std::size_t pages = 0;
  std::vector<std::string> orientation;
  std::size_t jobs = 1;

  auto* validate = app.add_subcommand("validate", "check the Jacobi identity and structural properties");
  validate->add_option("algebra", path, "algebra file")->required();

  auto* cohomology = app.add_subcommand("cohomology", "Betti numbers and Poincare duality check");
  cohomology->add_option("algebra", path, "algebra file")->required();
  cohomology->add_flag("--representatives", representatives, "dump cocycle representatives");

  auto* spectral = app.add_subcommand("spectral", "Hochschild-Serre spectral sequence pages");
  spectral->add_option("algebra", path, "algebra file")->required();
  spectral->add_option("--pages", pages, "last page to report (default: one past the base dimension)");
  spectral->add_option("--ideal", ideal, "derived, full, or a JSON list of vectors");
  spectral->add_flag("--parallel", common.parallel, "compute page cells on several threads");

  auto* coincide = app.add_subcommand("coincide", "coincidence number of a problem file on all routes");
  coincide->add_option("problem", path, "problem file")->required();
  coincide->add_option("--pages", pages, "also evaluate the trace on pages 0..R");
  coincide->add_option("--orientation", orientation, "reverse the orientation of g1 or g2")
      ->check(CLI::IsMember({"flip1", "flip2"}));
  coincide->add_option("--ideal", ideal, "derived, full, or a JSON list of vectors");
  coincide->add_flag("--parallel", common.parallel, "run the routes on separate threads");

  auto* corpus = app.add_subcommand("corpus", "run every algebra and problem of a corpus directory");
  corpus->add_option("dir", path, "corpus directory (default: $LEF_CORPUS_DIR or the shipped corpus)");
  corpus->add_option("--jobs,-j", jobs, "worker threads")->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) {
      const auto file = lef::load_algebra(path);
      return emit(common, lef::validate_report(fs::path(path).filename().string(), file));
    }
    if (cohomology->parsed()) {
      const auto file = lef::load_algebra(path);
      return emit(common, lef::cohomology_report(fs::path(path).filename().string(), file, representatives));
    }
    if (spectral->parsed()) {
      const auto file = lef::load_algebra(path);
      const auto last = spectral->count("--pages") ? std::optional<std::size_t>(pages) : std::nullopt;
      lef::Outcome out = lef::spectral_report(fs::path(path).filename().string(), file, ideal_option(ideal), last,
                                              common.parallel);
      return emit(common, out);
    }
    if (coincide->parsed()) {
      lef::ProblemFile problem = lef::load_problem(path);
      if (coincide->count("--pages")) problem.pages = pages;
      lef::RunOptions options;
      options.parallel = common.parallel;
      for (const auto& o : orientation) (o == "flip1" ? options.flip1 : options.flip2) = true;
      if (!ideal.empty()) options.ideal = ideal_option(ideal);
      return emit(common, lef::coincide_report(problem, options));
    }
    if (corpus->parsed()) return emit(common, lef::corpus_report(corpus_dir(path), jobs));
  } catch (const lef::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const lef::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
