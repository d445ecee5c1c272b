#include "cdg/invariants.hpp"

#include "cdg/analysis.hpp"
#include "cdg/assembly.hpp"
#include "cdg/error.hpp"
#include "cdg/problems.hpp"
#include "cdg/solver.hpp"
#include "cdg/weak_gradient.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cdg {

namespace {

// sum c_ab x^a y^b over a + b <= degree
struct RandomPolynomial {
  int degree;
  std::vector<double> coeffs;

  RandomPolynomial(int k, std::mt19937_64& rng) : degree(k) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int a = 0; a <= k; ++a) {
      for (int b = 0; a + b <= k; ++b) coeffs.push_back(dist(rng));
    }
  }

  double value(double x, double y) const {
    double v = 0.0;
    std::size_t i = 0;
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) v += coeffs[i++] * std::pow(x, a) * std::pow(y, b);
    }
    return v;
  }

  Vec2 gradient(double x, double y) const {
    Vec2 g = Vec2::Zero();
    std::size_t i = 0;
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        const double c = coeffs[i++];
        if (a > 0) g.x() += c * a * std::pow(x, a - 1) * std::pow(y, b);
        if (b > 0) g.y() += c * b * std::pow(x, a) * std::pow(y, b - 1);
      }
    }
    return g;
  }
};

std::string str(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

CheckResult consistency(const InvariantSuiteOptions& o, const Mesh& mesh) {
  std::mt19937_64 rng(o.seed);
  double worst = 0.0;
  for (int k = 1; k <= o.max_degree; ++k) {
    const DGSpace space(mesh, k);
    const WeakGradientFactory factory(space);
    const TriangleRule rule = triangle_rule(2 * k + 2);
    for (int sample = 0; sample < 5; ++sample) {
      const RandomPolynomial p(k, rng);
      const Eigen::VectorXd v = interpolate(space, [&](double x, double y) { return p.value(x, y); });
      for (int t = 0; t < mesh.num_triangles(); ++t) {
        const LocalWeakGradient op = factory.build(t);
        const Eigen::VectorXd local = op.gather(v);
        const TriangleGeometry geo = mesh.geometry(t);
        for (const Bary& lambda : rule.points) {
          const Vec2 x = geo.map(lambda);
          worst = std::max(worst, (apply_weak_gradient(op, local, x) - p.gradient(x.x(), x.y())).norm());
        }
      }
    }
  }
  return {"weak gradient equals gradient on continuous P_k", worst < 1e-9, "max deviation " + str(worst)};
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const InvariantSuiteOptions& o) {
  std::vector<CheckResult> results;
  const Mesh mesh = Mesh::at_level(o.level);
  results.push_back(consistency(o, mesh));

  const Problem problem = make_problem("sinsin", 1);
  double asym = 0.0;
  double min_curvature = std::numeric_limits<double>::infinity();
  bool solved = true;
  bool stencil_ok = true;
  int max_distance = 0;
  std::string solver_detail;
  for (int k = 1; k <= o.max_degree; ++k) {
    const DGSpace space(mesh, k);
    const SparseSPDSystem sys = assemble(space, problem.source, problem.boundary);
    asym = std::max(asym, sys.matrix.max_asymmetry());
    try {
      const SolveResult r = solve_spd(sys);
      min_curvature = std::min(min_curvature, r.report.min_curvature);
    } catch (const SolverError& e) {
      solved = false;
      solver_detail = e.what();
    }
    const StencilReport st = stencil_check(sys, space);
    stencil_ok = stencil_ok && st.within_distance_two && st.diagonal_positive;
    max_distance = std::max(max_distance, st.max_element_distance);
  }
  results.push_back({"reduced matrix exactly symmetric", asym == 0.0, "max |A - A^T| = " + str(asym)});
  results.push_back({"conjugate gradients sees positive curvature", solved && min_curvature > 0.0,
                     solved ? "min p^T A p / p^T p = " + str(min_curvature) : solver_detail});
  results.push_back({"stencil within element distance 2", stencil_ok,
                     "max coupling distance " + std::to_string(max_distance)});

  {
    std::mt19937_64 rng(o.seed + 1);
    double smallest = std::numeric_limits<double>::infinity();
    const DGSpace space(mesh, 1);
    const WeakGradientFactory factory(space);
    for (int s = 0; s < o.samples; ++s) {
      const Eigen::VectorXd v = random_zero_trace_function(space, rng());
      smallest = std::min(smallest, energy_norm(factory, v));
    }
    results.push_back({"energy norm positive on V_h^0", smallest > 0.0,
                       std::to_string(o.samples) + " samples, min |||v||| = " + str(smallest)});
  }

  {
    const Mesh coarse = Mesh::at_level(2);
    const Mesh fine = coarse.refined();
    const NormRatioBounds a = norm_equivalence_probe(DGSpace(coarse, 1), 50, o.seed + 2);
    const NormRatioBounds b = norm_equivalence_probe(DGSpace(fine, 1), 50, o.seed + 2);
    const double drift = std::max({a.min_ratio / b.min_ratio, b.min_ratio / a.min_ratio,
                                   a.max_ratio / b.max_ratio, b.max_ratio / a.max_ratio});
    results.push_back({"norm equivalence ratios stable under refinement", a.min_ratio > 0.0 && drift < 2.0,
                       "ratios [" + str(a.min_ratio) + ", " + str(a.max_ratio) + "] -> [" + str(b.min_ratio) +
                           ", " + str(b.max_ratio) + "], drift " + str(drift)});
  }
  return results;
}

}  // namespace cdg
