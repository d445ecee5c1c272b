#include "cdg/solver.hpp"

#include "cdg/error.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace cdg {

namespace {

double vdot(const ExecutionPolicy& policy, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return dot(policy, {a.data(), static_cast<std::size_t>(a.size())}, {b.data(), static_cast<std::size_t>(b.size())});
}

}  // namespace

SolveReport pcg(const CsrMatrix& a, const Eigen::VectorXd& b, Eigen::VectorXd& x, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ExecutionPolicy& policy = options.policy;
  const int n = a.rows;
  const int max_iter = options.max_iterations > 0
                           ? options.max_iterations
                           : static_cast<int>(20.0 * std::sqrt(static_cast<double>(n))) + 1000;
  if (x.size() != n) x = Eigen::VectorXd::Zero(n);

  SolveReport report;
  report.min_curvature = std::numeric_limits<double>::infinity();
  auto finish = [&] {
    Eigen::VectorXd ax;
    a.multiply(x, ax, policy);
    const double bn = std::sqrt(vdot(policy, b, b));
    report.true_relative_residual = bn > 0.0 ? (b - ax).norm() / bn : (b - ax).norm();
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  const Eigen::VectorXd diag = a.diagonal();
  if ((diag.array() <= 0.0).any()) {
    throw SolverError(SolverError::Kind::Indefinite, 0, NAN, "non-positive diagonal entry in SPD solve");
  }
  const Eigen::VectorXd inv_diag = diag.cwiseInverse();

  const double b_norm = std::sqrt(vdot(policy, b, b));
  if (b_norm == 0.0) {
    x.setZero();
    finish();
    return report;
  }

  Eigen::VectorXd r, ap;
  a.multiply(x, ap, policy);
  r = b - ap;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = vdot(policy, r, z);
  report.relative_residual = std::sqrt(vdot(policy, r, r)) / b_norm;

  int it = 0;
  while (report.relative_residual > options.tolerance) {
    if (it == max_iter) {
      finish();
      std::ostringstream msg;
      msg << "conjugate gradients did not converge in " << max_iter << " iterations (relative residual "
          << report.relative_residual << ")";
      throw SolverError(SolverError::Kind::NotConverged, it, report.relative_residual, msg.str());
    }
    ++it;
    a.multiply(p, ap, policy);
    const double pap = vdot(policy, p, ap);
    const double pp = vdot(policy, p, p);
    if (pp < std::numeric_limits<double>::min()) {
      // The residual has underflowed: no further progress is possible.
      finish();
      std::ostringstream msg;
      msg << "conjugate gradients stagnated at iteration " << it << " (relative residual "
          << report.relative_residual << ")";
      throw SolverError(SolverError::Kind::NotConverged, it, report.relative_residual, msg.str());
    }
    if (!(pap > 0.0)) {
      std::ostringstream msg;
      msg << "non-positive curvature p^T A p = " << pap << " at iteration " << it;
      throw SolverError(SolverError::Kind::Indefinite, it, report.relative_residual, msg.str());
    }
    report.min_curvature = std::min(report.min_curvature, pap / pp);
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    report.relative_residual = std::sqrt(vdot(policy, r, r)) / b_norm;
    report.iterations = it;
    if (options.observer) options.observer(it, x);
    z = inv_diag.cwiseProduct(r);
    const double rz_next = vdot(policy, r, z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  finish();
  return report;
}

SolveResult solve_spd(const SparseSPDSystem& system, const SolveOptions& options) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(system.num_free());
  SolveResult result;
  result.report = pcg(system.matrix, system.rhs, x, options);
  result.solution = system.expand(x);
  return result;
}

SolveResult solve_spd(const SparseSPDSystem& system, const Eigen::VectorXd& initial_full, const SolveOptions& options) {
  Eigen::VectorXd x(system.num_free());
  for (int i = 0; i < system.num_free(); ++i) x[i] = initial_full[system.free_to_global[i]];
  SolveResult result;
  result.report = pcg(system.matrix, system.rhs, x, options);
  result.solution = system.expand(x);
  return result;
}

}  // namespace cdg
