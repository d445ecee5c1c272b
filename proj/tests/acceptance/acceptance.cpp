// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails.
//
//   cdg_acceptance --cli <path to cdg executable>

#include "cdg/assembly.hpp"
#include "cdg/error.hpp"
#include "cdg/invariants.hpp"
#include "cdg/problems.hpp"
#include "cdg/quadrature.hpp"
#include "cdg/solver.hpp"
#include "cdg/space.hpp"
#include "cdg/study.hpp"
#include "cdg/weak_gradient.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace {

struct PublishedRow {
  int degree;
  int level;
  double l2;
  double l2_rate;
  double energy;
  double energy_rate;
};

// Reference convergence table for -Laplace u = 2 pi^2 sin(pi x) sin(pi y) on the unit square.
const std::vector<PublishedRow> kPublished = {
    {1, 6, 0.7280E-03, 2.09, 0.7199E-01, 0.91}, {1, 7, 0.1751E-03, 2.06, 0.3718E-01, 0.95},
    {1, 8, 0.4287E-04, 2.03, 0.1890E-01, 0.98}, {2, 6, 0.6446E-05, 2.94, 0.1744E-02, 1.95},
    {2, 7, 0.8197E-06, 2.98, 0.4424E-03, 1.98}, {2, 8, 0.1033E-06, 2.99, 0.1113E-03, 1.99},
    {3, 6, 0.4457E-07, 4.02, 0.2293E-04, 2.97}, {3, 7, 0.2772E-08, 4.01, 0.2902E-05, 2.98},
    {3, 8, 0.1730E-09, 4.00, 0.3650E-06, 2.99}, {4, 5, 0.2057E-07, 5.03, 0.4748E-05, 3.95},
    {4, 6, 0.6344E-09, 5.02, 0.3009E-06, 3.98}, {4, 7, 0.1984E-10, 5.00, 0.1893E-07, 3.99},
    {5, 4, 0.2481E-07, 6.04, 0.3223E-05, 4.94}, {5, 5, 0.3811E-09, 6.02, 0.1024E-06, 4.98},
    {5, 6, 0.5938E-11, 6.00, 0.3225E-08, 4.99},
};

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      notes.push_back(what);
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

void report(int id, const std::string& title, const Outcome& o, const std::string& summary) {
  std::printf("%s criterion %d: %s -- %s\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), summary.c_str());
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

double relative(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

/// Least-squares slope of -log2(error) against level.
double fitted_order(const std::vector<cdg::ErrorRecord>& rec, double cdg::ErrorRecord::*field) {
  const int n = static_cast<int>(rec.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rec) {
    const double x = r.level, y = -std::log2(r.*field);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<cdg::ErrorRecord> tail(const std::vector<cdg::ErrorRecord>& rec, std::size_t n) {
  return {rec.end() - static_cast<std::ptrdiff_t>(std::min(n, rec.size())), rec.end()};
}

cdg::ConvergenceReport study(int degree, int min_level, int max_level, cdg::Protocol protocol) {
  cdg::StudyConfig c;
  c.degree = degree;
  c.min_level = min_level;
  c.max_level = max_level;
  c.protocol = protocol;
  c.deterministic = true;
  const auto t0 = std::chrono::steady_clock::now();
  auto r = cdg::run_study(c);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("  P%d levels %d..%d (%s): %.1f s\n", degree, min_level, max_level,
              protocol == cdg::Protocol::Published ? "published" : "exact", s);
  for (const auto& rec : r.records) {
    std::printf("    level %d  l2 %.4e (%s)  energy %.4e (%s)  cg %d\n", rec.level, rec.l2_error,
                rec.l2_rate ? fmt("%.2f", *rec.l2_rate).c_str() : "-", rec.energy_error,
                rec.energy_rate ? fmt("%.2f", *rec.energy_rate).c_str() : "-", rec.cg_iterations);
  }
  std::fflush(stdout);
  return r;
}

const cdg::ErrorRecord& at_level(const cdg::ConvergenceReport& r, int level) {
  for (const auto& rec : r.records) {
    if (rec.level == level) return rec;
  }
  throw std::runtime_error("level missing from study");
}

// ---------------------------------------------------------------------------

Outcome table_low_degree(const std::map<int, cdg::ConvergenceReport>& runs) {
  Outcome o;
  for (const auto& row : kPublished) {
    if (row.degree > 3) continue;
    const auto& r = at_level(runs.at(row.degree), row.level);
    const std::string where = "P" + std::to_string(row.degree) + " level " + std::to_string(row.level) + ": ";
    o.check(relative(r.l2_error, row.l2) <= 0.02, where + fmt("L2 %.4e vs %.4e", r.l2_error, row.l2));
    o.check(relative(r.energy_error, row.energy) <= 0.02, where + fmt("energy %.4e vs %.4e", r.energy_error, row.energy));
    o.check(r.l2_rate && std::abs(*r.l2_rate - row.l2_rate) <= 0.05,
            where + fmt("L2 rate %.3f vs %.2f", r.l2_rate.value_or(NAN), row.l2_rate));
    o.check(r.energy_rate && std::abs(*r.energy_rate - row.energy_rate) <= 0.05,
            where + fmt("energy rate %.3f vs %.2f", r.energy_rate.value_or(NAN), row.energy_rate));
  }
  return o;
}

Outcome table_high_degree(const std::map<int, cdg::ConvergenceReport>& runs) {
  Outcome o;
  for (const auto& row : kPublished) {
    if (row.degree < 4) continue;
    const auto& r = at_level(runs.at(row.degree), row.level);
    const std::string where = "P" + std::to_string(row.degree) + " level " + std::to_string(row.level) + ": ";
    o.check(relative(r.energy_error, row.energy) <= 0.02, where + fmt("energy %.4e vs %.4e", r.energy_error, row.energy));
    o.check(r.energy_rate && std::abs(*r.energy_rate - row.energy_rate) <= 0.05,
            where + fmt("energy rate %.3f vs %.2f", r.energy_rate.value_or(NAN), row.energy_rate));
    if (row.l2 >= 1e-10) {
      o.check(relative(r.l2_error, row.l2) <= 0.05, where + fmt("L2 %.4e vs %.4e", r.l2_error, row.l2));
    } else {
      o.check(r.l2_rate && std::abs(*r.l2_rate - row.l2_rate) <= 0.15,
              where + fmt("L2 rate %.3f vs %.2f", r.l2_rate.value_or(NAN), row.l2_rate));
    }
  }
  return o;
}

Outcome theoretical_orders(const std::map<int, cdg::ConvergenceReport>& published,
                           const std::map<int, cdg::ConvergenceReport>& exact, std::string& summary) {
  Outcome o;
  for (const auto* runs : {&published, &exact}) {
    const char* label = runs == &published ? "published" : "exact";
    for (const auto& [k, r] : *runs) {
      const auto last = tail(r.records, 3);
      const double e = fitted_order(last, &cdg::ErrorRecord::energy_error);
      const double l2 = fitted_order(last, &cdg::ErrorRecord::l2_error);
      summary += fmt(" P%.0f:%.2f/%.2f", k, e, l2);
      o.check(e >= k - 0.1, std::string(label) + fmt(" P%.0f energy order %.3f < %.1f", k, e, k - 0.1));
      o.check(l2 >= k + 1 - 0.1, std::string(label) + fmt(" P%.0f L2 order %.3f < %.1f", k, l2, k + 0.9));
    }
    if (runs == &published) summary += " |";
  }
  return o;
}

Outcome consistency(double& worst) {
  Outcome o;
  worst = 0.0;
  const cdg::Mesh mesh = cdg::Mesh::at_level(3);
  std::mt19937_64 rng(20240601ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 1; k <= 5; ++k) {
    const cdg::DGSpace space(mesh, k);
    const cdg::WeakGradientFactory factory(space);
    const auto rule = cdg::triangle_rule(2 * k + 2);
    std::vector<cdg::LocalWeakGradient> ops;
    for (int t = 0; t < mesh.num_triangles(); ++t) ops.push_back(factory.build(t));
    for (int sample = 0; sample < 20; ++sample) {
      cdg::oracle::Poly2 p;
      for (int a = 0; a <= k; ++a) {
        for (int b = 0; a + b <= k; ++b) p = p + cdg::oracle::Poly2::monomial(a, b, u(rng));
      }
      const cdg::oracle::Poly2 px = p.dx(), py = p.dy();
      const Eigen::VectorXd v = cdg::interpolate(space, [&](double x, double y) { return p(x, y); });
      for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto g = mesh.geometry(t);
        const Eigen::VectorXd local = ops[t].gather(v);
        for (const auto& lam : rule.points) {
          const cdg::Vec2 x = g.map(lam);
          const cdg::Vec2 w = cdg::apply_weak_gradient(ops[t], local, x);
          worst = std::max(worst, (w - cdg::Vec2(px(x.x(), x.y()), py(x.x(), x.y()))).norm());
        }
      }
    }
  }
  o.check(worst < 1e-9, fmt("max deviation %.3e", worst));
  return o;
}

Outcome polynomial_exactness(double& worst) {
  Outcome o;
  worst = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const auto problem = cdg::make_problem("linear", k);
    for (int level = 1; level <= 4; ++level) {
      const cdg::Mesh mesh = cdg::Mesh::at_level(level);
      const cdg::DGSpace space(mesh, k);
      const auto system = cdg::assemble(space, problem.source, problem.boundary);
      const auto result = cdg::solve_spd(system);
      const double err = (result.solution - cdg::interpolate(space, problem.exact)).lpNorm<Eigen::Infinity>();
      worst = std::max(worst, err);
      o.check(err < 1e-9, fmt("P%.0f level %.0f: nodal error %.3e", k, level, err));
    }
  }
  return o;
}

Outcome structural(std::string& summary) {
  Outcome o;
  const auto results = cdg::run_invariant_suite({});
  int passed = 0;
  for (const auto& r : results) {
    std::printf("    %s %s: %s\n", r.passed ? "ok  " : "FAIL", r.name.c_str(), r.detail.c_str());
    o.check(r.passed, r.name + ": " + r.detail);
    passed += r.passed ? 1 : 0;
  }
  o.check(results.size() >= 5, "invariant suite returned too few checks");
  summary = std::to_string(passed) + "/" + std::to_string(results.size()) + " structural checks";
  return o;
}

std::optional<std::string> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome determinism(const std::string& cli, std::string& summary) {
  Outcome o;
  if (cli.empty()) {
    o.check(false, "no --cli executable given");
    return o;
  }
  const auto dir = std::filesystem::temp_directory_path() / ("cdg_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("run" + std::to_string(run) + ".csv");
    const std::string cmd = "\"" + cli + "\" solve --degree 2 --levels 2..6 --problem sinsin --deterministic --out \"" +
                            out.string() + "\"";
    const int status = std::system(cmd.c_str());
    o.check(status == 0, "command failed: " + cmd);
    outputs.push_back(slurp(out).value_or(""));
  }
  std::filesystem::remove_all(dir);
  o.check(!outputs[0].empty(), "empty CSV output");
  o.check(outputs[0] == outputs[1], "CSV outputs differ");
  summary = std::to_string(outputs[0].size()) + " bytes, identical=" + (outputs[0] == outputs[1] ? "yes" : "no");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s --cli <cdg executable>\n", argv[0]);
      return 2;
    }
  }

  bool all = true;
  try {
    std::printf("convergence studies (sequential, deterministic)\n");
    std::map<int, cdg::ConvergenceReport> published;
    for (int k = 1; k <= 3; ++k) published.emplace(k, study(k, 5, 8, cdg::Protocol::Published));
    published.emplace(4, study(4, 4, 7, cdg::Protocol::Published));
    published.emplace(5, study(5, 3, 6, cdg::Protocol::Published));
    std::map<int, cdg::ConvergenceReport> exact;
    for (int k = 1; k <= 3; ++k) exact.emplace(k, study(k, 5, 7, cdg::Protocol::Exact));
    exact.emplace(4, study(4, 4, 6, cdg::Protocol::Exact));
    exact.emplace(5, study(5, 3, 5, cdg::Protocol::Exact));

    auto o1 = table_low_degree(published);
    report(1, "reference table, P1-P3 levels 6-8", o1, "errors within 2%, rates within 0.05");
    auto o2 = table_high_degree(published);
    report(2, "reference table, P4 levels 5-7 and P5 levels 4-6", o2,
           "energy within 2% / 0.05, L2 within 5% or L2 rate within 0.15");
    std::string orders;
    auto o3 = theoretical_orders(published, exact, orders);
    report(3, "fitted orders over the three finest levels (energy/L2)", o3, orders);
    double dev = 0.0;
    auto o4 = consistency(dev);
    report(4, "weak gradient of interpolated P_k polynomials equals gradient", o4,
           fmt("20 polynomials per degree on level 3, max deviation %.3e", dev));
    double nodal = 0.0;
    auto o5 = polynomial_exactness(nodal);
    report(5, "u = x + y reproduced for every degree, levels 1-4", o5, fmt("max nodal error %.3e", nodal));
    std::string structure;
    auto o6 = structural(structure);
    report(6, "structural invariants", o6, structure);
    std::string det;
    auto o7 = determinism(cli, det);
    report(7, "deterministic CSV output is byte-identical", o7, det);
    all = o1.passed && o2.passed && o3.passed && o4.passed && o5.passed && o6.passed && o7.passed;
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%s\n", all ? "all criteria passed" : "some criteria failed");
  return all ? 0 : 1;
}
