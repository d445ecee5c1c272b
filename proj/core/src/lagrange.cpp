#include "cdg/lagrange.hpp"

#include "cdg/error.hpp"

#include <cassert>
#include <string>

namespace cdg {

LagrangeBasis::LagrangeBasis(int degree) : degree_(degree) {
  if (degree < kMinDegree || degree > kMaxDegree) {
    throw ConfigError("polynomial degree " + std::to_string(degree) + " outside [1, 5]");
  }
  for (int a2 = 0; a2 <= degree; ++a2) {
    for (int a1 = 0; a1 + a2 <= degree; ++a1) {
      indices_.push_back({degree - a1 - a2, a1, a2});
    }
  }
}

Bary LagrangeBasis::node(int i) const {
  const auto& a = indices_[i];
  const double k = degree_;
  return {a[0] / k, a[1] / k, a[2] / k};
}

namespace {

// P[s] = prod_{t<s} (k lambda - t) / (t + 1) and its derivative in lambda.
struct Factors {
  std::array<double, kMaxDegree + 1> value{};
  std::array<double, kMaxDegree + 1> slope{};
};

Factors factors(int k, double lambda) {
  Factors f;
  f.value[0] = 1.0;
  f.slope[0] = 0.0;
  const double kl = k * lambda;
  for (int s = 0; s < k; ++s) {
    f.value[s + 1] = f.value[s] * (kl - s) / (s + 1);
    f.slope[s + 1] = (f.slope[s] * (kl - s) + f.value[s] * k) / (s + 1);
  }
  return f;
}

}  // namespace

void LagrangeBasis::values(const Bary& lambda, std::span<double> out) const {
  assert(out.size() >= indices_.size());
  const Factors f0 = factors(degree_, lambda[0]);
  const Factors f1 = factors(degree_, lambda[1]);
  const Factors f2 = factors(degree_, lambda[2]);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const auto& a = indices_[i];
    out[i] = f0.value[a[0]] * f1.value[a[1]] * f2.value[a[2]];
  }
}

void LagrangeBasis::evaluate(const Bary& lambda, std::span<double> values, std::span<Vec2> gradients) const {
  assert(values.size() >= indices_.size() && gradients.size() >= indices_.size());
  const Factors f0 = factors(degree_, lambda[0]);
  const Factors f1 = factors(degree_, lambda[1]);
  const Factors f2 = factors(degree_, lambda[2]);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const auto& a = indices_[i];
    const double v0 = f0.value[a[0]], v1 = f1.value[a[1]], v2 = f2.value[a[2]];
    values[i] = v0 * v1 * v2;
    const double d0 = f0.slope[a[0]] * v1 * v2;
    const double d1 = v0 * f1.slope[a[1]] * v2;
    const double d2 = v0 * v1 * f2.slope[a[2]];
    // xi = lambda1, eta = lambda2, lambda0 = 1 - xi - eta.
    gradients[i] = Vec2(d1 - d0, d2 - d0);
  }
}

LagrangeValues eval_lagrange(int degree, const Bary& lambda) {
  const LagrangeBasis basis(degree);
  LagrangeValues out;
  out.values.resize(basis.size());
  out.gradients.resize(basis.size());
  basis.evaluate(lambda, out.values, out.gradients);
  return out;
}

}  // namespace cdg
