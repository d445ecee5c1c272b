#pragma once

#include "cdg/quadrature.hpp"
#include "cdg/raviart_thomas.hpp"
#include "cdg/space.hpp"

#include <Eigen/Core>

#include <vector>

namespace cdg {

/// Weak gradient on one element, as a linear map from patch DOF values to
/// RT_k(T) coefficients: G = M^{-1} B.
///
/// The patch is the element followed by its edge neighbours in ascending
/// order; `patch_dofs` lists their DOFs element by element in local node order.
/// B(i, j) = -(phi_j, div tau_i)_T + <{phi_j}, tau_i . n>_{dT}, where on an
/// interior edge the average takes half of each adjacent trace and on a
/// boundary edge it is the element's own trace.
struct LocalWeakGradient {
  int element = -1;
  std::vector<int> patch_elements;
  std::vector<int> patch_dofs;
  RTBasis rt;
  Eigen::MatrixXd mass;           ///< RT mass matrix M
  Eigen::MatrixXd mass_factor;    ///< lower Cholesky factor L, M = L L^T
  Eigen::MatrixXd moments;        ///< B
  Eigen::MatrixXd gradient;       ///< G

  /// Patch values of a global DOF vector.
  Eigen::VectorXd gather(const Eigen::VectorXd& global) const;

  /// W = L^{-1} B, so that (grad_w u, grad_w v)_T = (W u)^T (W v).
  Eigen::MatrixXd energy_factor() const;

  /// S = W^T W. Upper triangle computed and mirrored, so S is exactly symmetric.
  Eigen::MatrixXd stiffness() const;
};

/// M_ij = (tau_i, tau_j)_T. Throws DegenerateError when M is not positive definite.
Eigen::MatrixXd rt_mass_matrix(const RTBasis& rt, const TriangleGeometry& geometry,
                               const TriangleRule& rule);

/// Builds local weak gradients for every element of a space. Quadrature rules
/// and reference basis tables are shared across elements.
class WeakGradientFactory {
public:
  /// Default rules: triangle degree 2k+2, edge degree 2k+1.
  explicit WeakGradientFactory(const DGSpace& space, int volume_degree = -1, int edge_degree = -1);

  const DGSpace& space() const { return *space_; }

  LocalWeakGradient build(int t) const;

private:
  const DGSpace* space_;
  TriangleRule volume_rule_;
  EdgeRule edge_rule_;
  std::vector<std::vector<double>> volume_phi_;  ///< [q][j]
  // [local edge][reversed][q][j]; the edge opposite vertex m runs from vertex
  // m+1 to m+2, or backwards when reversed.
  std::array<std::array<std::vector<std::vector<double>>, 2>, 3> edge_phi_;
};

LocalWeakGradient build_local_weak_gradient(const DGSpace& space, int t);

/// Evaluates sum_i (G dofs)_i tau_i(point) for patch values `dofs`.
Vec2 apply_weak_gradient(const LocalWeakGradient& op, const Eigen::Ref<const Eigen::VectorXd>& dofs,
                         const Vec2& point);

}  // namespace cdg
