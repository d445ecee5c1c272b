#include "cdg/assembly.hpp"
#include "cdg/mesh.hpp"
#include "cdg/problems.hpp"
#include "cdg/solver.hpp"
#include "cdg/space.hpp"
#include "cdg/weak_gradient.hpp"

#include <benchmark/benchmark.h>

namespace {

// Local weak-gradient construction (mass, moments, Cholesky solve) per element.
void BM_WeakGradientBuild(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const cdg::Mesh mesh = cdg::Mesh::at_level(4);
  const cdg::DGSpace space(mesh, k);
  const cdg::WeakGradientFactory factory(space);
  int t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(factory.build(t));
    t = (t + 1) % mesh.num_triangles();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WeakGradientBuild)->DenseRange(1, 5);

void BM_Assemble(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int level = static_cast<int>(state.range(1));
  const cdg::Mesh mesh = cdg::Mesh::at_level(level);
  const cdg::DGSpace space(mesh, k);
  const auto problem = cdg::make_problem("sinsin", k);
  for (auto _ : state) {
    auto system = cdg::assemble(space, problem.source, problem.boundary);
    benchmark::DoNotOptimize(system.rhs.data());
  }
  state.counters["elements"] = mesh.num_triangles();
  state.SetItemsProcessed(state.iterations() * mesh.num_triangles());
}
BENCHMARK(BM_Assemble)->Args({1, 6})->Args({3, 5})->Args({5, 4})->Unit(benchmark::kMillisecond);

void BM_MatVec(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const cdg::Mesh mesh = cdg::Mesh::at_level(static_cast<int>(state.range(1)));
  const cdg::DGSpace space(mesh, k);
  const auto problem = cdg::make_problem("sinsin", k);
  const auto system = cdg::assemble(space, problem.source, problem.boundary);
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(system.num_free());
  Eigen::VectorXd y;
  for (auto _ : state) {
    system.matrix.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["nnz"] = static_cast<double>(system.matrix.nonzeros());
  state.SetBytesProcessed(state.iterations() * system.matrix.nonzeros() * (sizeof(double) + sizeof(int)));
}
BENCHMARK(BM_MatVec)->Args({1, 7})->Args({3, 6})->Args({5, 5});

void BM_Solve(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const cdg::Mesh mesh = cdg::Mesh::at_level(static_cast<int>(state.range(1)));
  const cdg::DGSpace space(mesh, k);
  const auto problem = cdg::make_problem("sinsin", k);
  const auto system = cdg::assemble(space, problem.source, problem.boundary);
  int iterations = 0;
  for (auto _ : state) {
    const auto result = cdg::solve_spd(system);
    iterations = result.report.iterations;
    benchmark::DoNotOptimize(result.solution.data());
  }
  state.counters["cg_iterations"] = iterations;
  state.counters["dofs"] = system.num_free();
}
BENCHMARK(BM_Solve)->Args({1, 6})->Args({3, 5})->Args({5, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
