#include "cdg/quadrature.hpp"

#include "cdg/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cdg {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree) {
    throw ConfigError("quadrature degree " + std::to_string(degree) + " outside [0, " +
                      std::to_string(kMaxQuadratureDegree) + "]");
  }
}

}  // namespace

EdgeRule gauss_legendre(int n) {
  if (n < 1) throw ConfigError("Gauss rule needs at least one point");
  EdgeRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  rule.exact_degree = 2 * n - 1;
  // Newton iteration on P_n over [-1, 1], then map to [0, 1].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = 0.5 * (1.0 - x);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.5;
  return rule;
}

EdgeRule edge_rule(int exact_degree) {
  check_degree(exact_degree);
  EdgeRule rule = gauss_legendre((exact_degree + 2) / 2);
  rule.exact_degree = exact_degree;
  return rule;
}

TriangleRule triangle_rule(int exact_degree) {
  check_degree(exact_degree);
  TriangleRule rule;
  rule.exact_degree = exact_degree;
  if (exact_degree <= 1) {
    rule.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    rule.weights.push_back(1.0);
    return rule;
  }
  if (exact_degree == 2) {
    const double a = 2.0 / 3.0, b = 1.0 / 6.0;
    rule.points = {{a, b, b}, {b, a, b}, {b, b, a}};
    rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return rule;
  }
  // (s, t) in the unit square -> (xi, eta) = (s, t (1 - s)); Jacobian (1 - s)
  // raises the degree in s by one.
  const EdgeRule outer = gauss_legendre((exact_degree + 3) / 2);
  const EdgeRule inner = gauss_legendre((exact_degree + 2) / 2);
  rule.points.reserve(outer.size() * inner.size());
  rule.weights.reserve(outer.size() * inner.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double s = outer.points[i];
    for (std::size_t j = 0; j < inner.size(); ++j) {
      const double xi = s;
      const double eta = inner.points[j] * (1.0 - s);
      rule.points.push_back({1.0 - xi - eta, xi, eta});
      // Reference area 1/2 normalized to one.
      rule.weights.push_back(2.0 * outer.weights[i] * inner.weights[j] * (1.0 - s));
    }
  }
  return rule;
}

}  // namespace cdg
