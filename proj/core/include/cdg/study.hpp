#pragma once

#include "cdg/analysis.hpp"
#include "cdg/solver.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cdg {

enum class OutputFormat { Csv, Markdown };

/// How the load is integrated and what the l2_error column measures.
enum class Protocol {
  /// Load (I_h f, v); l2_error = ||u_h - I_h u||. Reproduces the published tables.
  Published,
  /// Load (f, v) by quadrature of degree 2k+4; l2_error = ||u - u_h|| at degree 2k+6.
  Exact,
};

inline constexpr int kMaxLevel = 9;

struct StudyConfig {
  int degree = 1;
  int min_level = 1;
  int max_level = 4;
  std::string problem = "sinsin";
  Protocol protocol = Protocol::Published;
  BoundaryConstraint boundary = BoundaryConstraint::BoundaryNodes;
  double tolerance = kDefaultSolverTolerance;
  int quadrature_bump = 0;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  ///< empty: stdout
  bool deterministic = false;
  int threads = 0;          ///< 0: hardware concurrency unless deterministic

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
};

/// Parses "A..B" (or a single level "A").
std::pair<int, int> parse_level_range(const std::string& text);
OutputFormat parse_output_format(const std::string& text);
Protocol parse_protocol(const std::string& text);
BoundaryConstraint parse_boundary_constraint(const std::string& text);

struct ConvergenceReport {
  StudyConfig config;
  std::vector<ErrorRecord> records;
};

/// Refines from the base mesh, then for each level assembles, solves and
/// measures errors. When the L2 error falls below 1e-10 the level is re-solved
/// from its current solution with tolerance min(tol, 1e-15).
/// The energy column is always |||u_h - I_h u|||.
/// Throws SolverError annotated with the failing level.
ConvergenceReport run_study(const StudyConfig& config);

inline constexpr const char* kCsvHeader =
    "level,h,ndof,l2_error,l2_rate,energy_error,energy_rate,cg_iters,assemble_ms,solve_ms";

/// Timing columns are left empty when `deterministic` is set.
void write_csv(const ConvergenceReport& report, std::ostream& out);
void write_markdown(const ConvergenceReport& report, std::ostream& out);
void write_report(const ConvergenceReport& report, std::ostream& out);

/// Reads `key = value` lines; `#` starts a comment. Keys are returned as written.
std::vector<std::pair<std::string, std::string>> read_key_value_file(const std::string& path);

}  // namespace cdg
