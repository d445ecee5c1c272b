#include "cdg/space.hpp"

#include <vector>

namespace cdg {

DGSpace::DGSpace(const Mesh& mesh, int degree, BoundaryConstraint constraint)
    : mesh_(&mesh), basis_(degree), constraint_(constraint) {
  const int nloc = basis_.size();
  const int k = basis_.degree();
  std::vector<char> boundary_vertex(mesh.vertices().size(), 0);
  for (const Edge& e : mesh.edges()) {
    if (e.is_boundary()) boundary_vertex[e.vertices[0]] = boundary_vertex[e.vertices[1]] = 1;
  }
  boundary_flag_.assign(static_cast<std::size_t>(mesh.num_triangles()) * nloc, 0);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Triangle& tri = mesh.triangles()[t];
    for (int e = 0; e < 3; ++e) {
      if (!mesh.edges()[tri.edges[e]].is_boundary()) continue;
      for (int i = 0; i < nloc; ++i) {
        if (basis_.on_edge(i, e)) boundary_flag_[dof(t, i)] = 1;
      }
    }
    if (constraint == BoundaryConstraint::BoundaryNodes) {
      // Interior points of interior edges never touch the boundary; only
      // vertex copies can be added.
      for (int i = 0; i < nloc; ++i) {
        const auto& a = basis_.multi_index(i);
        for (int v = 0; v < 3; ++v) {
          if (a[v] == k && boundary_vertex[tri.vertices[v]]) boundary_flag_[dof(t, i)] = 1;
        }
      }
    }
  }
  for (int d = 0; d < num_dofs(); ++d) {
    if (boundary_flag_[d]) boundary_dofs_.push_back(d);
  }
}

Vec2 DGSpace::node_coordinates(int d) const {
  const int t = element_of(d);
  const int local = d - t * dofs_per_element();
  const Triangle& tri = mesh_->triangles()[t];
  const Bary lambda = basis_.node(local);
  Vec2 p = Vec2::Zero();
  for (int i = 0; i < 3; ++i) p += lambda[i] * mesh_->vertices()[tri.vertices[i]].point();
  return p;
}

double DGSpace::evaluate(const Eigen::VectorXd& dofs, int t, const Bary& lambda) const {
  std::vector<double> phi(dofs_per_element());
  basis_.values(lambda, phi);
  double v = 0.0;
  for (int i = 0; i < dofs_per_element(); ++i) v += dofs[dof(t, i)] * phi[i];
  return v;
}

Eigen::VectorXd interpolate(const DGSpace& space, const ScalarFunction& f) {
  Eigen::VectorXd out(space.num_dofs());
  for (int d = 0; d < space.num_dofs(); ++d) {
    const Vec2 p = space.node_coordinates(d);
    out[d] = f(p.x(), p.y());
  }
  return out;
}

}  // namespace cdg
