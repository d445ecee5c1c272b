#include "cdg/assembly.hpp"
#include "cdg/error.hpp"
#include "cdg/mesh.hpp"
#include "cdg/solver.hpp"
#include "cdg/space.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace {

cdg::CsrMatrix dense_to_csr(const Eigen::MatrixXd& a) {
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0.0) t.emplace_back(i, j, a(i, j));
    }
  }
  return cdg::CsrMatrix::from_triplets(static_cast<int>(a.rows()), static_cast<int>(a.cols()), t);
}

Eigen::MatrixXd random_spd(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = u(rng);
  }
  return b * b.transpose() + n * Eigen::MatrixXd::Identity(n, n);
}

TEST(Pcg, OneByOne) {
  Eigen::MatrixXd a(1, 1);
  a << 4.0;
  Eigen::VectorXd b(1), x = Eigen::VectorXd::Zero(1);
  b << 2.0;
  const auto r = cdg::pcg(dense_to_csr(a), b, x);
  EXPECT_DOUBLE_EQ(x[0], 0.5);
  EXPECT_LE(r.iterations, 1);
}

TEST(Pcg, ZeroRightHandSideReturnsImmediately) {
  const auto a = dense_to_csr(random_spd(5, 1));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  const auto r = cdg::pcg(a, Eigen::VectorXd::Zero(5), x);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(x.norm(), 0.0);
}

TEST(Pcg, RandomDenseSpdAgainstCholesky) {
  const Eigen::MatrixXd a = random_spd(50, 2);
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(50, -1.0, 2.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(50);
  const auto r = cdg::pcg(dense_to_csr(a), b, x);
  const Eigen::VectorXd ref = a.llt().solve(b);
  EXPECT_LT((x - ref).norm() / ref.norm(), 1e-11);
  EXPECT_LE(r.relative_residual, cdg::kDefaultSolverTolerance);
  EXPECT_LT(r.true_relative_residual, 1e-12);
  EXPECT_GT(r.min_curvature, 0.0);
}

TEST(Pcg, ErrorDecreasesMonotonicallyInEnergyNorm) {
  const Eigen::MatrixXd a = random_spd(40, 3);
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(40);
  const Eigen::VectorXd exact = a.llt().solve(b);
  std::vector<double> errors;
  cdg::SolveOptions opts;
  opts.observer = [&](int, const Eigen::VectorXd& x) {
    const Eigen::VectorXd e = x - exact;
    errors.push_back(e.dot(a * e));
  };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(40);
  cdg::pcg(dense_to_csr(a), b, x, opts);
  ASSERT_GT(errors.size(), 2u);
  for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_LE(errors[i], errors[i - 1] * (1 + 1e-12));
}

TEST(Pcg, InvariantUnderDiagonalRescaling) {
  const Eigen::MatrixXd a = random_spd(30, 4);
  Eigen::VectorXd d(30);
  for (int i = 0; i < 30; ++i) d[i] = std::pow(2.0, i % 7 - 3);  // powers of two keep scaling exact
  const Eigen::MatrixXd scaled = d.asDiagonal() * a * d.asDiagonal();
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(30, 1.0, 3.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(30), y = Eigen::VectorXd::Zero(30);
  const auto r1 = cdg::pcg(dense_to_csr(a), b, x);
  const Eigen::VectorXd db = d.asDiagonal() * b;
  const auto r2 = cdg::pcg(dense_to_csr(scaled), db, y);
  EXPECT_LE(std::abs(r1.iterations - r2.iterations), 1);
  EXPECT_LT((d.asDiagonal() * y - x).norm() / x.norm(), 1e-11);
}

TEST(Pcg, IndefiniteMatrixThrows) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 2, 1;
  Eigen::VectorXd b(2), x = Eigen::VectorXd::Zero(2);
  b << 1, -1;
  try {
    cdg::pcg(dense_to_csr(a), b, x);
    FAIL() << "expected SolverError";
  } catch (const cdg::SolverError& e) {
    EXPECT_EQ(e.kind(), cdg::SolverError::Kind::Indefinite);
  }
}

TEST(Pcg, NonPositiveDiagonalThrows) {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 2;
  Eigen::VectorXd b = Eigen::VectorXd::Ones(2), x = Eigen::VectorXd::Zero(2);
  EXPECT_THROW(cdg::pcg(dense_to_csr(a), b, x), cdg::SolverError);
}

TEST(Pcg, IterationLimitThrowsNotConverged) {
  cdg::SolveOptions opts;
  opts.max_iterations = 1;
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(50, -3.0, 1.0), x = Eigen::VectorXd::Zero(50);
  try {
    cdg::pcg(dense_to_csr(random_spd(50, 5)), b, x, opts);
    FAIL() << "expected SolverError";
  } catch (const cdg::SolverError& e) {
    EXPECT_EQ(e.kind(), cdg::SolverError::Kind::NotConverged);
    EXPECT_EQ(e.iterations(), 1);
    EXPECT_GT(e.relative_residual(), opts.tolerance);
  }
}

TEST(Pcg, UnreachableToleranceReportsNotConverged) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(4);
  const cdg::DGSpace space(mesh, 1);
  const auto sys = cdg::assemble(space, [](double, double) { return 1.0; }, [](double, double) { return 0.0; });
  cdg::SolveOptions opts;
  opts.tolerance = 1e-300;
  try {
    cdg::solve_spd(sys, opts);
    FAIL() << "expected SolverError";
  } catch (const cdg::SolverError& e) {
    EXPECT_EQ(e.kind(), cdg::SolverError::Kind::NotConverged);
  }
}

TEST(Pcg, ParallelKernelsAreBitIdentical) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(5);
  const cdg::DGSpace space(mesh, 2);
  const auto sys = cdg::assemble(space, [](double x, double y) { return x * (1 - y); },
                                 [](double, double) { return 0.0; });
  cdg::SolveOptions par;
  par.policy.threads = 3;
  const auto a = cdg::solve_spd(sys);
  const auto b = cdg::solve_spd(sys, par);
  EXPECT_EQ(a.report.iterations, b.report.iterations);
  EXPECT_TRUE(std::equal(a.solution.begin(), a.solution.end(), b.solution.begin()));
}

TEST(SolveSpd, TrueResidualOnSmallProblem) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(2);
  const cdg::DGSpace space(mesh, 1);
  const auto sys = cdg::assemble(space, [](double, double) { return 1.0; }, [](double, double) { return 0.0; });
  const auto result = cdg::solve_spd(sys);
  Eigen::VectorXd free(sys.num_free());
  for (int i = 0; i < sys.num_free(); ++i) free[i] = result.solution[sys.free_to_global[i]];
  Eigen::VectorXd ax;
  sys.matrix.multiply(free, ax);
  EXPECT_LE((sys.rhs - ax).norm() / sys.rhs.norm(), 1e-14);
  EXPECT_LE(result.report.true_relative_residual, 1e-14);
}

TEST(SolveSpd, WarmStartFromConvergedSolution) {
  const cdg::Mesh mesh = cdg::Mesh::at_level(3);
  const cdg::DGSpace space(mesh, 2);
  const auto sys = cdg::assemble(space, [](double x, double) { return x; }, [](double, double) { return 0.0; });
  const auto first = cdg::solve_spd(sys);
  cdg::SolveOptions tight;
  tight.tolerance = 1e-15;
  const auto second = cdg::solve_spd(sys, first.solution, tight);
  EXPECT_LT(second.report.iterations, first.report.iterations);
  EXPECT_LT((second.solution - first.solution).norm(), 1e-10 * first.solution.norm());
}

}  // namespace
