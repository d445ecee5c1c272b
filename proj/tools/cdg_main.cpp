// Command line driver: convergence studies, invariant checks, mesh and matrix export.

#include "cdg/assembly.hpp"
#include "cdg/error.hpp"
#include "cdg/invariants.hpp"
#include "cdg/mesh.hpp"
#include "cdg/problems.hpp"
#include "cdg/study.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitInvariantFailure = 4;

struct SolveArgs {
  int degree = 1;
  std::string levels = "1..4";
  std::string problem = "sinsin";
  std::string protocol = "published";
  std::string boundary = "nodes";
  double tol = cdg::kDefaultSolverTolerance;
  int quadrature_bump = 0;
  std::string format = "csv";
  std::string out;
  bool deterministic = false;
  int threads = 0;
  std::string config;
};

// Values from the config file fill options not given on the command line.
void apply_config_file(const SolveArgs& args, SolveArgs& merged, CLI::App& cmd) {
  if (args.config.empty()) return;
  for (const auto& [key, value] : cdg::read_key_value_file(args.config)) {
    auto unset = [&](const char* name) { return cmd.get_option(std::string("--") + name)->count() == 0; };
    try {
      if (key == "degree") {
        if (unset("degree")) merged.degree = std::stoi(value);
      } else if (key == "levels") {
        if (unset("levels")) merged.levels = value;
      } else if (key == "problem") {
        if (unset("problem")) merged.problem = value;
      } else if (key == "protocol") {
        if (unset("protocol")) merged.protocol = value;
      } else if (key == "boundary") {
        if (unset("boundary")) merged.boundary = value;
      } else if (key == "tol") {
        if (unset("tol")) merged.tol = std::stod(value);
      } else if (key == "quadrature-bump" || key == "quadrature_bump") {
        if (unset("quadrature-bump")) merged.quadrature_bump = std::stoi(value);
      } else if (key == "format") {
        if (unset("format")) merged.format = value;
      } else if (key == "out") {
        if (unset("out")) merged.out = value;
      } else if (key == "deterministic") {
        if (unset("deterministic")) merged.deterministic = value == "true" || value == "1" || value == "yes";
      } else if (key == "threads") {
        if (unset("threads")) merged.threads = std::stoi(value);
      } else {
        throw cdg::ConfigError("unknown config key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw cdg::ConfigError("invalid value '" + value + "' for config key '" + key + "'");
    }
  }
}

int run_solve(const SolveArgs& given, CLI::App& cmd) {
  SolveArgs args = given;
  apply_config_file(given, args, cmd);

  cdg::StudyConfig cfg;
  cfg.degree = args.degree;
  std::tie(cfg.min_level, cfg.max_level) = cdg::parse_level_range(args.levels);
  cfg.problem = args.problem;
  cfg.protocol = cdg::parse_protocol(args.protocol);
  cfg.boundary = cdg::parse_boundary_constraint(args.boundary);
  cfg.tolerance = args.tol;
  cfg.quadrature_bump = args.quadrature_bump;
  cfg.format = cdg::parse_output_format(args.format);
  cfg.output_path = args.out;
  cfg.deterministic = args.deterministic;
  cfg.threads = args.threads;
  cfg.validate();

  const cdg::ConvergenceReport report = cdg::run_study(cfg);
  if (cfg.output_path.empty()) {
    cdg::write_report(report, std::cout);
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw cdg::ConfigError("cannot write '" + cfg.output_path + "'");
    cdg::write_report(report, out);
  }
  return kExitOk;
}

int run_check(const cdg::InvariantSuiteOptions& options) {
  bool ok = true;
  for (const auto& r : cdg::run_invariant_suite(options)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitInvariantFailure;
}

std::ostream& open_or_stdout(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw cdg::ConfigError("cannot write '" + path + "'");
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conforming discontinuous Galerkin solver for the Poisson problem on the unit square"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run a convergence study and print the error table");
  solve->add_option("--degree,-k", solve_args.degree, "Polynomial degree k in [1, 5]");
  solve->add_option("--levels,-l", solve_args.levels, "Level range A..B (level 1 is the two-triangle mesh)");
  solve->add_option("--problem,-p", solve_args.problem, "Problem name (see `cdg problems`)");
  solve->add_option("--protocol", solve_args.protocol,
                    "published: interpolated load, l2_error = ||u_h - I_h u||; exact: quadrature load, l2_error = ||u - u_h||");
  solve->add_option("--boundary", solve_args.boundary,
                    "nodes: constrain every node copy on the boundary; edges: only copies on own boundary edges");
  solve->add_option("--tol", solve_args.tol, "Relative residual tolerance for conjugate gradients");
  solve->add_option("--quadrature-bump", solve_args.quadrature_bump, "Extra degree for load and error quadrature");
  solve->add_option("--format,-f", solve_args.format, "csv or markdown");
  solve->add_option("--out,-o", solve_args.out, "Output path (default: stdout)");
  solve->add_flag("--deterministic", solve_args.deterministic, "Sequential mode; omit timings for byte-identical output");
  solve->add_option("--threads", solve_args.threads, "Worker threads (0: hardware concurrency)");
  solve->add_option("--config", solve_args.config, "File of `key = value` lines; command line flags take precedence");

  cdg::InvariantSuiteOptions check_opts;
  auto* check = app.add_subcommand("check", "Run the invariant suite; exits 4 on failure");
  check->add_option("--max-degree", check_opts.max_degree, "Highest degree checked")->check(CLI::Range(1, 5));
  check->add_option("--level", check_opts.level, "Mesh level for the checks")->check(CLI::Range(1, 6));
  check->add_option("--samples", check_opts.samples, "Random samples for the norm-positivity probe")
      ->check(CLI::PositiveNumber);

  auto* problems = app.add_subcommand("problems", "List the built-in problems");

  int mesh_level = 1;
  std::string mesh_out;
  auto* mesh_cmd = app.add_subcommand("mesh", "Dump the mesh at a level as plain text");
  mesh_cmd->add_option("--level,-l", mesh_level, "Mesh level")->check(CLI::Range(1, cdg::kMaxLevel));
  mesh_cmd->add_option("--out,-o", mesh_out, "Output path (default: stdout)");

  int matrix_degree = 1, matrix_level = 1;
  std::string matrix_problem = "sinsin", matrix_out;
  auto* matrix_cmd = app.add_subcommand("matrix", "Export the reduced stiffness matrix as `row col value` lines");
  matrix_cmd->add_option("--degree,-k", matrix_degree, "Polynomial degree")->check(CLI::Range(1, 5));
  matrix_cmd->add_option("--level,-l", matrix_level, "Mesh level")->check(CLI::Range(1, cdg::kMaxLevel));
  matrix_cmd->add_option("--problem,-p", matrix_problem, "Problem supplying boundary data");
  matrix_cmd->add_option("--out,-o", matrix_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadConfig;
  }

  try {
    if (*solve) return run_solve(solve_args, *solve);
    if (*check) return run_check(check_opts);
    if (*problems) {
      for (const auto& p : cdg::list_problems()) std::cout << p.name << "\t" << p.description << '\n';
      return kExitOk;
    }
    if (*mesh_cmd) {
      std::ofstream file;
      cdg::Mesh::at_level(mesh_level).write(open_or_stdout(mesh_out, file));
      return kExitOk;
    }
    if (*matrix_cmd) {
      const cdg::Mesh mesh = cdg::Mesh::at_level(matrix_level);
      const cdg::DGSpace space(mesh, matrix_degree);
      const cdg::Problem problem = cdg::make_problem(matrix_problem, matrix_degree);
      const auto system = cdg::assemble(space, problem.source, problem.boundary);
      std::ofstream file;
      system.matrix.write_coordinate(open_or_stdout(matrix_out, file));
      return kExitOk;
    }
  } catch (const cdg::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const cdg::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const cdg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitOk;
}
