#include "cdg/analysis.hpp"
#include "cdg/error.hpp"
#include "cdg/mesh.hpp"
#include "cdg/space.hpp"
#include "cdg/weak_gradient.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace {

constexpr double kPi = std::numbers::pi;

TEST(L2, SineProductNormOnBaseMesh) {
  const cdg::Mesh mesh = cdg::Mesh::base();
  for (int k = 1; k <= 3; ++k) {
    const cdg::DGSpace space(mesh, k);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(space.num_dofs());
    const double e = cdg::l2_error(space, zero, [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); }, 16);
    EXPECT_NEAR(e, 0.5, 1e-12);
  }
}

TEST(L2, NormOfSimpleFunctions) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(3);
  const cdg::DGSpace space(mesh, 2);
  EXPECT_NEAR(cdg::l2_norm(space, cdg::interpolate(space, [](double, double) { return 1.0; })), 1.0, 1e-14);
  EXPECT_NEAR(cdg::l2_norm(space, cdg::interpolate(space, [](double x, double) { return x; })), std::sqrt(1.0 / 3.0), 1e-14);
  EXPECT_NEAR(cdg::l2_norm(space, cdg::interpolate(space, [](double x, double y) { return x * y; })), 1.0 / 3.0, 1e-14);
}

TEST(L2, InterpolantErrorVanishesOnInterpolant) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(3);
  const cdg::DGSpace space(mesh, 3);
  const auto u = [](double x, double y) { return std::exp(x) * std::cos(y); };
  EXPECT_EQ(cdg::l2_interpolant_error(space, cdg::interpolate(space, u), u), 0.0);
  EXPECT_NEAR(cdg::l2_interpolant_error(space, cdg::interpolate(space, [](double, double) { return 0.0; }), u),
              cdg::l2_norm(space, cdg::interpolate(space, u)), 1e-15);
}

TEST(H1h, IndicatorOfOneBaseTriangle) {
  const cdg::Mesh mesh = cdg::Mesh::base();
  const cdg::DGSpace space(mesh, 1);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(space.num_dofs());
  for (int i = 0; i < 3; ++i) v[space.dof(0, i)] = 1.0;
  EXPECT_NEAR(cdg::h1h_norm(space, v), 1.0, 1e-14);
}

TEST(H1h, LinearOnOneBaseTriangle) {
  // |grad x|^2 area 1/2, plus jump x along the diagonal: (1/sqrt2) * sqrt2/3.
  const cdg::Mesh mesh = cdg::Mesh::base();
  const cdg::DGSpace space(mesh, 2);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(space.num_dofs());
  for (int i = 0; i < space.dofs_per_element(); ++i) v[space.dof(0, i)] = space.node_coordinates(space.dof(0, i)).x();
  EXPECT_NEAR(cdg::h1h_norm(space, v), std::sqrt(5.0 / 6.0), 1e-14);
}

TEST(EnergyNorm, IsHomogeneousAndPositive) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(3);
  const cdg::DGSpace space(mesh, 2);
  const cdg::WeakGradientFactory factory(space);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Eigen::VectorXd v = cdg::random_zero_trace_function(space, seed);
    for (int d : space.boundary_dofs()) EXPECT_EQ(v[d], 0.0);
    const double n = cdg::energy_norm(factory, v);
    EXPECT_GT(n, 0.0);
    EXPECT_NEAR(cdg::energy_norm(factory, -3.0 * v), 3.0 * n, 1e-12 * n);
  }
}

TEST(EnergyNorm, EqualsGradientNormForContinuousFunctions) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(3);
  for (int k = 1; k <= 5; ++k) {
    const cdg::DGSpace space(mesh, k);
    const cdg::WeakGradientFactory factory(space);
    // u = x^k: ||grad u||^2 = k^2 / (2k - 1).
    const Eigen::VectorXd v = cdg::interpolate(space, [k](double x, double) { return std::pow(x, k); });
    const double expected = k / std::sqrt(2.0 * k - 1.0);
    EXPECT_NEAR(cdg::energy_norm(factory, v), expected, 1e-11);
    EXPECT_NEAR(cdg::h1h_norm(space, v), expected, 1e-11);
  }
}

TEST(EnergyError, ZeroForInterpolant) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(2);
  const cdg::DGSpace space(mesh, 2);
  const auto u = [](double x, double y) { return std::sin(x + y); };
  EXPECT_EQ(cdg::energy_error(space, cdg::interpolate(space, u), u), 0.0);
}

TEST(NormProbe, RatioIsBoundedAwayFromZero) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(3);
  const cdg::DGSpace space(mesh, 2);
  const auto b = cdg::norm_equivalence_probe(space, 30, 11);
  EXPECT_EQ(b.samples, 30);
  EXPECT_GT(b.min_ratio, 0.0);
  EXPECT_LE(b.min_ratio, b.max_ratio);
  const auto again = cdg::norm_equivalence_probe(space, 30, 11);
  EXPECT_EQ(b.min_ratio, again.min_ratio);
  EXPECT_EQ(b.max_ratio, again.max_ratio);
}

TEST(Rates, ObservedRate) {
  EXPECT_NEAR(*cdg::observed_rate(1e-2, 2.5e-3), 2.0, 1e-14);
  EXPECT_EQ(*cdg::observed_rate(1e-3, 1e-3), 0.0);
  EXPECT_FALSE(cdg::observed_rate(0.0, 1e-3).has_value());
  EXPECT_FALSE(cdg::observed_rate(1e-3, 0.0).has_value());
}

TEST(Rates, ConvergenceRatesFillConsecutiveLevels) {
  std::vector<cdg::ErrorRecord> rec(3);
  for (int i = 0; i < 3; ++i) {
    rec[i].level = 4 + i;
    rec[i].l2_error = std::pow(0.25, i);
    rec[i].energy_error = std::pow(0.5, i);
  }
  const auto out = cdg::convergence_rates(rec);
  EXPECT_FALSE(out[0].l2_rate.has_value());
  EXPECT_NEAR(*out[1].l2_rate, 2.0, 1e-14);
  EXPECT_NEAR(*out[2].energy_rate, 1.0, 1e-14);
  rec[2].level = 9;
  EXPECT_THROW(cdg::convergence_rates(rec), cdg::ConfigError);
}

}  // namespace
