#pragma once

#include "cdg/parallel.hpp"
#include "cdg/space.hpp"
#include "cdg/sparse.hpp"

#include <Eigen/Core>

#include <vector>

namespace cdg {

/// Reduced system over the free (unconstrained) DOFs.
struct SparseSPDSystem {
  CsrMatrix matrix;
  Eigen::VectorXd rhs;
  std::vector<int> free_to_global;
  std::vector<int> global_to_free;  ///< -1 for constrained DOFs
  std::vector<int> constrained;     ///< ascending global DOF ids
  Eigen::VectorXd constrained_values;

  int num_free() const { return static_cast<int>(free_to_global.size()); }
  int num_global() const { return static_cast<int>(global_to_free.size()); }

  /// Full DOF vector from free values plus the prescribed boundary values.
  Eigen::VectorXd expand(const Eigen::VectorXd& free_values) const;
};

enum class LoadIntegration {
  /// (f, phi_i) with f sampled at quadrature points.
  Quadrature,
  /// (I_h f, phi_i): f replaced by its elementwise P_k Lagrange interpolant.
  Interpolated,
};

struct AssemblyOptions {
  ExecutionPolicy policy = ExecutionPolicy::sequential();
  LoadIntegration load = LoadIntegration::Quadrature;
  /// Load integration degree is 2k + 4 + load_degree_bump.
  int load_degree_bump = 0;
};

/// Assembles (grad_w u, grad_w v) = (f, v) with u = I_h g fixed on constrained DOFs.
///
/// Local stiffness S_T = G^T M G is scattered over patch DOFs in element order.
/// Couplings with constrained DOFs are moved to the right-hand side.
SparseSPDSystem assemble(const DGSpace& space, const ScalarFunction& f, const ScalarFunction& g,
                         const AssemblyOptions& options = {});

/// For each element, every element that shares a weak-gradient patch with it (ascending).
std::vector<std::vector<int>> element_couplings(const Mesh& mesh);

struct StencilReport {
  int max_row_nonzeros = 0;
  int max_element_distance = 0;   ///< over all stored couplings
  bool within_distance_two = true;
  bool diagonal_positive = true;
};

StencilReport stencil_check(const SparseSPDSystem& system, const DGSpace& space);

/// Breadth-first distances from `source` in the edge adjacency graph of the mesh.
std::vector<int> element_distances(const Mesh& mesh, int source);

}  // namespace cdg
