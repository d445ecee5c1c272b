#pragma once

#include "cdg/assembly.hpp"
#include "cdg/parallel.hpp"
#include "cdg/sparse.hpp"

#include <Eigen/Core>

#include <functional>

namespace cdg {

inline constexpr double kDefaultSolverTolerance = 1e-13;

struct SolveOptions {
  double tolerance = kDefaultSolverTolerance;  ///< on ||b - Ax|| / ||b||
  int max_iterations = 0;                     ///< 0: 20 sqrt(n) + 1000
  ExecutionPolicy policy = ExecutionPolicy::sequential();
  /// Called after every iteration with the current iterate.
  std::function<void(int, const Eigen::VectorXd&)> observer;
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;       ///< recursively updated residual
  double true_relative_residual = 0.0;  ///< ||b - Ax|| / ||b|| recomputed at exit
  double min_curvature = 0.0;           ///< min p^T A p / p^T p over iterations
  double wall_ms = 0.0;
};

/// Jacobi-preconditioned conjugate gradients. `x` holds the initial guess on
/// entry. Throws SolverError on non-positive curvature or non-convergence.
SolveReport pcg(const CsrMatrix& a, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                const SolveOptions& options = {});

struct SolveResult {
  Eigen::VectorXd solution;  ///< all DOFs of V_h, boundary values re-inserted
  SolveReport report;
};

SolveResult solve_spd(const SparseSPDSystem& system, const SolveOptions& options = {});

/// Continues from a previous full solution, e.g. to tighten the tolerance.
SolveResult solve_spd(const SparseSPDSystem& system, const Eigen::VectorXd& initial_full,
                      const SolveOptions& options);

}  // namespace cdg
