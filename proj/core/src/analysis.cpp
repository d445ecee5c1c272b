#include "cdg/analysis.hpp"

#include "cdg/error.hpp"
#include "cdg/quadrature.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace cdg {

double l2_error(const DGSpace& space, const Eigen::VectorXd& uh, const ScalarFunction& u, int extra_degree) {
  const Mesh& mesh = space.mesh();
  const int nloc = space.dofs_per_element();
  const TriangleRule rule = triangle_rule(2 * space.degree() + 6 + extra_degree);
  std::vector<std::vector<double>> phi(rule.size(), std::vector<double>(nloc));
  for (std::size_t q = 0; q < rule.size(); ++q) space.basis().values(rule.points[q], phi[q]);

  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const TriangleGeometry geo = mesh.geometry(t);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      double v = 0.0;
      for (int i = 0; i < nloc; ++i) v += uh[space.dof(t, i)] * phi[q][i];
      const Vec2 x = geo.map(rule.points[q]);
      const double diff = v - u(x.x(), x.y());
      local += rule.weights[q] * diff * diff;
    }
    sum += local * geo.area;
  }
  return std::sqrt(sum);
}

double l2_norm(const DGSpace& space, const Eigen::VectorXd& v) {
  const Mesh& mesh = space.mesh();
  const int nloc = space.dofs_per_element();
  const TriangleRule rule = triangle_rule(2 * space.degree());
  std::vector<std::vector<double>> phi(rule.size(), std::vector<double>(nloc));
  for (std::size_t q = 0; q < rule.size(); ++q) space.basis().values(rule.points[q], phi[q]);
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      double value = 0.0;
      for (int i = 0; i < nloc; ++i) value += v[space.dof(t, i)] * phi[q][i];
      local += rule.weights[q] * value * value;
    }
    sum += local * mesh.geometry(t).area;
  }
  return std::sqrt(sum);
}

double l2_interpolant_error(const DGSpace& space, const Eigen::VectorXd& uh, const ScalarFunction& u) {
  return l2_norm(space, uh - interpolate(space, u));
}

double energy_norm(const WeakGradientFactory& factory, const Eigen::VectorXd& v) {
  const Mesh& mesh = factory.space().mesh();
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const LocalWeakGradient op = factory.build(t);
    sum += (op.energy_factor() * op.gather(v)).squaredNorm();
  }
  return std::sqrt(sum);
}

double energy_error(const WeakGradientFactory& factory, const Eigen::VectorXd& uh, const ScalarFunction& u) {
  const Eigen::VectorXd e = uh - interpolate(factory.space(), u);
  return energy_norm(factory, e);
}

double energy_error(const DGSpace& space, const Eigen::VectorXd& uh, const ScalarFunction& u) {
  return energy_error(WeakGradientFactory(space), uh, u);
}

double h1h_norm(const DGSpace& space, const Eigen::VectorXd& v) {
  const Mesh& mesh = space.mesh();
  const LagrangeBasis& basis = space.basis();
  const int nloc = space.dofs_per_element();
  const int k = space.degree();
  const TriangleRule rule = triangle_rule(2 * k);
  const EdgeRule erule = edge_rule(2 * k);
  std::vector<double> phi(nloc);
  std::vector<Vec2> dphi(nloc);

  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const TriangleGeometry geo = mesh.geometry(t);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      basis.evaluate(rule.points[q], phi, dphi);
      Vec2 grad = Vec2::Zero();
      for (int i = 0; i < nloc; ++i) grad += v[space.dof(t, i)] * dphi[i];
      local += rule.weights[q] * geo.physical_gradient(grad).squaredNorm();
    }
    sum += local * geo.area;
  }

  // [v] = (v_1 - v_2) n_1, so |[v]|^2 = (v_1 - v_2)^2.
  for (const Edge& e : mesh.edges()) {
    if (e.is_boundary()) continue;
    const TriangleGeometry gl = mesh.geometry(e.left);
    const TriangleGeometry gr = mesh.geometry(*e.right);
    const Vec2 a = mesh.vertices()[e.vertices[0]].point();
    const Vec2 b = mesh.vertices()[e.vertices[1]].point();
    double local = 0.0;
    for (std::size_t q = 0; q < erule.size(); ++q) {
      const Vec2 x = (1.0 - erule.points[q]) * a + erule.points[q] * b;
      const double jump = space.evaluate(v, e.left, gl.barycentric(x)) - space.evaluate(v, *e.right, gr.barycentric(x));
      local += erule.weights[q] * jump * jump;
    }
    // h_e^{-1} ||[v]||_e^2 with ||.||_e^2 = length * sum(w jump^2).
    sum += local;
  }
  return std::sqrt(sum);
}

std::optional<double> observed_rate(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0) || !std::isfinite(coarse) || !std::isfinite(fine)) return std::nullopt;
  return std::log2(coarse / fine);
}

std::vector<ErrorRecord> convergence_rates(std::vector<ErrorRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].l2_rate.reset();
    records[i].energy_rate.reset();
    if (i == 0) continue;
    if (records[i].level != records[i - 1].level + 1) throw ConfigError("convergence_rates needs consecutive levels");
    records[i].l2_rate = observed_rate(records[i - 1].l2_error, records[i].l2_error);
    records[i].energy_rate = observed_rate(records[i - 1].energy_error, records[i].energy_error);
  }
  return records;
}

namespace {

Eigen::VectorXd random_zero_trace(const DGSpace& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(space.num_dofs());
  for (int d = 0; d < space.num_dofs(); ++d) v[d] = dist(rng);
  for (const int d : space.boundary_dofs()) v[d] = 0.0;
  return v;
}

}  // namespace

Eigen::VectorXd random_zero_trace_function(const DGSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_zero_trace(space, rng);
}

NormRatioBounds norm_equivalence_probe(const DGSpace& space, int samples, std::uint64_t seed) {
  if (samples < 1) throw ConfigError("norm_equivalence_probe needs at least one sample");
  const WeakGradientFactory factory(space);
  const Mesh& mesh = space.mesh();
  std::vector<Eigen::MatrixXd> factors;
  std::vector<LocalWeakGradient> ops;
  ops.reserve(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ops.push_back(factory.build(t));
    factors.push_back(ops.back().energy_factor());
  }

  std::mt19937_64 rng(seed);
  NormRatioBounds bounds;
  bounds.min_ratio = std::numeric_limits<double>::infinity();
  bounds.max_ratio = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd v = random_zero_trace(space, rng);
    double energy = 0.0;
    for (std::size_t t = 0; t < ops.size(); ++t) energy += (factors[t] * ops[t].gather(v)).squaredNorm();
    const double ratio = std::sqrt(energy) / h1h_norm(space, v);
    bounds.min_ratio = std::min(bounds.min_ratio, ratio);
    bounds.max_ratio = std::max(bounds.max_ratio, ratio);
    ++bounds.samples;
  }
  return bounds;
}

}  // namespace cdg
