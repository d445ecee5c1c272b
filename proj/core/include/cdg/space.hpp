#pragma once

#include "cdg/lagrange.hpp"
#include "cdg/mesh.hpp"

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace cdg {

using ScalarFunction = std::function<double(double, double)>;

/// Which element-local node copies are fixed by the Dirichlet condition.
enum class BoundaryConstraint {
  /// Every copy whose node lies on the boundary of the domain, including
  /// vertex copies of elements that touch the boundary only at a corner.
  BoundaryNodes,
  /// Only copies lying on a boundary edge of their own element.
  BoundaryEdgeTraces,
};

/// Discontinuous piecewise P_k space on a mesh. DOFs are element-local Lagrange
/// nodes numbered element by element: dof(t, i) = t * dofs_per_element + i.
///
/// The constrained set is chosen by BoundaryConstraint. The mesh must outlive
/// the space.
class DGSpace {
public:
  DGSpace(const Mesh& mesh, int degree, BoundaryConstraint constraint = BoundaryConstraint::BoundaryNodes);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return basis_.degree(); }
  const LagrangeBasis& basis() const { return basis_; }
  BoundaryConstraint constraint() const { return constraint_; }

  int dofs_per_element() const { return basis_.size(); }
  int num_dofs() const { return mesh_->num_triangles() * basis_.size(); }
  int dof(int t, int local) const { return t * basis_.size() + local; }
  int element_of(int dof) const { return dof / basis_.size(); }

  Vec2 node_coordinates(int dof) const;
  bool is_boundary_dof(int dof) const { return boundary_flag_[dof] != 0; }
  const std::vector<int>& boundary_dofs() const { return boundary_dofs_; }

  /// Value of the DG function `dofs` at barycentric point `lambda` of element `t`.
  double evaluate(const Eigen::VectorXd& dofs, int t, const Bary& lambda) const;

private:
  const Mesh* mesh_;
  LagrangeBasis basis_;
  BoundaryConstraint constraint_;
  std::vector<char> boundary_flag_;
  std::vector<int> boundary_dofs_;
};

/// Lagrange interpolation: DOF i = f(node_i).
Eigen::VectorXd interpolate(const DGSpace& space, const ScalarFunction& f);

}  // namespace cdg
