#pragma once

#include "cdg/space.hpp"
#include "cdg/weak_gradient.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <vector>

namespace cdg {

/// ||u - u_h|| with a triangle rule of degree 2k + 6 + extra_degree.
double l2_error(const DGSpace& space, const Eigen::VectorXd& uh, const ScalarFunction& u,
                int extra_degree = 0);

/// ||v||, exact for the DG function itself.
double l2_norm(const DGSpace& space, const Eigen::VectorXd& v);

/// ||u_h - I_h u||.
double l2_interpolant_error(const DGSpace& space, const Eigen::VectorXd& uh, const ScalarFunction& u);

/// |||v|||, the weak-gradient energy norm.
double energy_norm(const WeakGradientFactory& factory, const Eigen::VectorXd& v);

/// |||u_h - I_h u|||.
double energy_error(const WeakGradientFactory& factory, const Eigen::VectorXd& uh,
                    const ScalarFunction& u);
double energy_error(const DGSpace& space, const Eigen::VectorXd& uh, const ScalarFunction& u);

/// ||v||_{1,h}: broken H1 seminorm plus h_e^{-1} ||[v]||_e^2 over interior edges.
double h1h_norm(const DGSpace& space, const Eigen::VectorXd& v);

struct ErrorRecord {
  int level = 0;
  double h = 0.0;
  std::int64_t ndof = 0;
  double l2_error = 0.0;
  double energy_error = 0.0;
  std::optional<double> h1h_norm;
  std::optional<double> l2_rate;
  std::optional<double> energy_rate;
  int cg_iterations = 0;
  double assemble_ms = 0.0;
  double solve_ms = 0.0;
};

/// log2(e_{L-1} / e_L) for consecutive records; absent when either error is
/// zero or non-finite. Throws ConfigError when levels are not consecutive.
std::vector<ErrorRecord> convergence_rates(std::vector<ErrorRecord> records);

/// Observed rate between two errors; nullopt when undefined.
std::optional<double> observed_rate(double coarse, double fine);

struct NormRatioBounds {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int samples = 0;
};

/// Extremes of |||v||| / ||v||_{1,h} over pseudo-random v in V_h^0 (DOFs
/// uniform in [-1, 1], constrained DOFs zeroed).
NormRatioBounds norm_equivalence_probe(const DGSpace& space, int samples, std::uint64_t seed);

/// Uniform random DOF vector in V_h^0.
Eigen::VectorXd random_zero_trace_function(const DGSpace& space, std::uint64_t seed);

}  // namespace cdg
