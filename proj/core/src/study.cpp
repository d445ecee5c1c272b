#include "cdg/study.hpp"

#include "cdg/assembly.hpp"
#include "cdg/error.hpp"
#include "cdg/problems.hpp"
#include "cdg/solver.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cdg {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string format_optional(const char* fmt, const std::optional<double>& v) {
  return v ? format(fmt, *v) : std::string{};
}

}  // namespace

void StudyConfig::validate() const {
  if (degree < kMinDegree || degree > kMaxDegree) throw ConfigError("degree must lie in [1, 5]");
  if (min_level < 1 || min_level > max_level || max_level > kMaxLevel) {
    throw ConfigError("levels must satisfy 1 <= min <= max <= 9");
  }
  bool known = false;
  for (const auto& p : list_problems()) known = known || p.name == problem;
  if (!known) throw ConfigError("unknown problem '" + problem + "'");
  if (!(tolerance > 0.0) || !(tolerance < 1.0)) throw ConfigError("solver tolerance must lie in (0, 1)");
  if (quadrature_bump < 0) throw ConfigError("quadrature bump must be non-negative");
  if (threads < 0) throw ConfigError("thread count must be non-negative");
}

std::pair<int, int> parse_level_range(const std::string& text) {
  const std::string s = trim(text);
  auto to_int = [&](const std::string& part) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("invalid level range '" + text + "'");
    }
    if (used != part.size()) throw ConfigError("invalid level range '" + text + "'");
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int l = to_int(s);
    return {l, l};
  }
  return {to_int(trim(s.substr(0, dots))), to_int(trim(s.substr(dots + 2)))};
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "markdown" || text == "md") return OutputFormat::Markdown;
  throw ConfigError("unknown output format '" + text + "'");
}

Protocol parse_protocol(const std::string& text) {
  if (text == "published") return Protocol::Published;
  if (text == "exact") return Protocol::Exact;
  throw ConfigError("unknown protocol '" + text + "' (expected published or exact)");
}

BoundaryConstraint parse_boundary_constraint(const std::string& text) {
  if (text == "nodes") return BoundaryConstraint::BoundaryNodes;
  if (text == "edges") return BoundaryConstraint::BoundaryEdgeTraces;
  throw ConfigError("unknown boundary constraint '" + text + "' (expected nodes or edges)");
}

ConvergenceReport run_study(const StudyConfig& config) {
  config.validate();
  ConvergenceReport report{config, {}};
  const Problem problem = make_problem(config.problem, config.degree);
  ExecutionPolicy policy = ExecutionPolicy::sequential();
  if (!config.deterministic) policy = config.threads > 0 ? ExecutionPolicy{config.threads} : ExecutionPolicy::hardware();

  const bool published = config.protocol == Protocol::Published;
  auto measure_l2 = [&](const DGSpace& space, const Eigen::VectorXd& uh) {
    return published ? l2_interpolant_error(space, uh, problem.exact)
                     : l2_error(space, uh, problem.exact, config.quadrature_bump);
  };

  Mesh mesh = Mesh::base();
  for (int level = 1; level <= config.max_level; ++level) {
    if (level > 1) mesh = mesh.refined();
    if (level < config.min_level) continue;

    const DGSpace space(mesh, config.degree, config.boundary);
    ErrorRecord rec;
    rec.level = level;
    rec.h = mesh.h();
    rec.ndof = space.num_dofs();

    auto start = Clock::now();
    AssemblyOptions assembly;
    assembly.policy = policy;
    assembly.load = published ? LoadIntegration::Interpolated : LoadIntegration::Quadrature;
    assembly.load_degree_bump = config.quadrature_bump;
    const SparseSPDSystem system = assemble(space, problem.source, problem.boundary, assembly);
    rec.assemble_ms = elapsed_ms(start);

    start = Clock::now();
    SolveOptions opts;
    opts.tolerance = config.tolerance;
    opts.policy = policy;
    SolveResult result;
    try {
      result = solve_spd(system, opts);
      rec.cg_iterations = result.report.iterations;
      rec.l2_error = measure_l2(space, result.solution);
      // Near machine precision the solver contribution is no longer negligible.
      if (rec.l2_error < 1e-10 && config.tolerance > 1e-15) {
        opts.tolerance = 1e-15;
        result = solve_spd(system, result.solution, opts);
        rec.cg_iterations += result.report.iterations;
        rec.l2_error = measure_l2(space, result.solution);
      }
    } catch (const SolverError& e) {
      throw SolverError(e.kind(), e.iterations(), e.relative_residual(),
                        "level " + std::to_string(level) + ": " + e.what());
    }
    rec.solve_ms = elapsed_ms(start);

    const WeakGradientFactory factory(space);
    rec.energy_error = energy_error(factory, result.solution, problem.exact);
    report.records.push_back(rec);
  }
  report.records = convergence_rates(std::move(report.records));
  return report;
}

void write_csv(const ConvergenceReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  const bool timings = !report.config.deterministic;
  for (const ErrorRecord& r : report.records) {
    out << r.level << ',' << format("%.9e", r.h) << ',' << r.ndof << ',' << format("%.9e", r.l2_error) << ','
        << format_optional("%.4f", r.l2_rate) << ',' << format("%.9e", r.energy_error) << ','
        << format_optional("%.4f", r.energy_rate) << ',' << r.cg_iterations << ','
        << (timings ? format("%.1f", r.assemble_ms) : "") << ',' << (timings ? format("%.1f", r.solve_ms) : "")
        << '\n';
  }
}

void write_markdown(const ConvergenceReport& report, std::ostream& out) {
  const bool timings = !report.config.deterministic;
  out << "P" << report.config.degree << " elements, problem `" << report.config.problem << "`, "
      << (report.config.protocol == Protocol::Published ? "l2_error = ||u_h - I_h u||" : "l2_error = ||u - u_h||")
      << ", energy_error = |||u_h - I_h u|||\n\n";
  out << "| level | h | ndof | l2_error | l2_rate | energy_error | energy_rate | cg_iters | assemble_ms | solve_ms |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const ErrorRecord& r : report.records) {
    out << "| " << r.level << " | " << format("%.3e", r.h) << " | " << r.ndof << " | " << format("%.3e", r.l2_error)
        << " | " << format_optional("%.2f", r.l2_rate) << " | " << format("%.3e", r.energy_error) << " | "
        << format_optional("%.2f", r.energy_rate) << " | " << r.cg_iterations << " | "
        << (timings ? format("%.1f", r.assemble_ms) : "") << " | " << (timings ? format("%.1f", r.solve_ms) : "")
        << " |\n";
  }
}

void write_report(const ConvergenceReport& report, std::ostream& out) {
  if (report.config.format == OutputFormat::Markdown) {
    write_markdown(report, out);
  } else {
    write_csv(report, out);
  }
}

std::vector<std::pair<std::string, std::string>> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

}  // namespace cdg
