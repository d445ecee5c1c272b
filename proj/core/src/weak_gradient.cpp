#include "cdg/weak_gradient.hpp"

#include "cdg/error.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cassert>
#include <string>

namespace cdg {

Eigen::VectorXd LocalWeakGradient::gather(const Eigen::VectorXd& global) const {
  Eigen::VectorXd out(patch_dofs.size());
  for (std::size_t j = 0; j < patch_dofs.size(); ++j) out[j] = global[patch_dofs[j]];
  return out;
}

Eigen::MatrixXd LocalWeakGradient::energy_factor() const {
  return mass_factor.triangularView<Eigen::Lower>().solve(moments);
}

Eigen::MatrixXd LocalWeakGradient::stiffness() const {
  const Eigen::MatrixXd w = energy_factor();
  const Eigen::Index n = w.cols();
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      const double v = w.col(a).dot(w.col(b));
      s(a, b) = v;
      s(b, a) = v;
    }
  }
  return s;
}

Eigen::MatrixXd rt_mass_matrix(const RTBasis& rt, const TriangleGeometry& geometry, const TriangleRule& rule) {
  const int n = rt.size();
  std::vector<Vec2> tau(n);
  std::vector<double> div(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    rt.evaluate(geometry.map(rule.points[q]), tau, div);
    const double w = rule.weights[q] * geometry.area;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) m(i, j) += w * tau[i].dot(tau[j]);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) m(i, j) = m(j, i);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw DegenerateError("RT mass matrix is not positive definite");
  return m;
}

WeakGradientFactory::WeakGradientFactory(const DGSpace& space, int volume_degree, int edge_degree)
    : space_(&space),
      volume_rule_(triangle_rule(volume_degree < 0 ? 2 * space.degree() + 2 : volume_degree)),
      edge_rule_(edge_rule(edge_degree < 0 ? 2 * space.degree() + 1 : edge_degree)) {
  const LagrangeBasis& basis = space.basis();
  const int nloc = basis.size();
  volume_phi_.assign(volume_rule_.size(), std::vector<double>(nloc));
  for (std::size_t q = 0; q < volume_rule_.size(); ++q) basis.values(volume_rule_.points[q], volume_phi_[q]);
  for (int m = 0; m < 3; ++m) {
    for (int rev = 0; rev < 2; ++rev) {
      auto& table = edge_phi_[m][rev];
      table.assign(edge_rule_.size(), std::vector<double>(nloc));
      for (std::size_t q = 0; q < edge_rule_.size(); ++q) {
        const double s = rev ? 1.0 - edge_rule_.points[q] : edge_rule_.points[q];
        Bary lambda{};
        lambda[m] = 0.0;
        lambda[(m + 1) % 3] = 1.0 - s;
        lambda[(m + 2) % 3] = s;
        basis.values(lambda, table[q]);
      }
    }
  }
}

LocalWeakGradient WeakGradientFactory::build(int t) const {
  const Mesh& mesh = space_->mesh();
  const int nloc = space_->dofs_per_element();
  const Triangle& tri = mesh.triangles()[t];
  const TriangleGeometry geometry = mesh.geometry(t);

  LocalWeakGradient op{t, {}, {}, build_rt_basis(geometry, space_->degree()), {}, {}, {}, {}};
  const int nrt = op.rt.size();

  std::array<std::optional<int>, 3> nbr;
  op.patch_elements.push_back(t);
  for (int m = 0; m < 3; ++m) {
    nbr[m] = mesh.neighbor(t, m);
    if (nbr[m]) op.patch_elements.push_back(*nbr[m]);
  }
  std::sort(op.patch_elements.begin() + 1, op.patch_elements.end());
  for (const int p : op.patch_elements) {
    for (int i = 0; i < nloc; ++i) op.patch_dofs.push_back(space_->dof(p, i));
  }
  auto block_of = [&](int element) {
    const auto it = std::find(op.patch_elements.begin(), op.patch_elements.end(), element);
    return static_cast<int>(it - op.patch_elements.begin()) * nloc;
  };

  std::vector<Vec2> tau(nrt);
  std::vector<double> div(nrt);
  op.mass = Eigen::MatrixXd::Zero(nrt, nrt);
  op.moments = Eigen::MatrixXd::Zero(nrt, static_cast<Eigen::Index>(op.patch_dofs.size()));

  // -(v, div tau)_T and (tau, tau)_T
  for (std::size_t q = 0; q < volume_rule_.size(); ++q) {
    op.rt.evaluate(geometry.map(volume_rule_.points[q]), tau, div);
    const double w = volume_rule_.weights[q] * geometry.area;
    const auto& phi = volume_phi_[q];
    for (int i = 0; i < nrt; ++i) {
      for (int j = i; j < nrt; ++j) op.mass(i, j) += w * tau[i].dot(tau[j]);
      const double wd = w * div[i];
      for (int j = 0; j < nloc; ++j) op.moments(i, j) -= wd * phi[j];
    }
  }
  for (int i = 0; i < nrt; ++i) {
    for (int j = 0; j < i; ++j) op.mass(i, j) = op.mass(j, i);
  }

  // <{v}, tau . n>_{dT}
  for (int m = 0; m < 3; ++m) {
    const int edge_id = tri.edges[m];
    const Edge& edge = mesh.edges()[edge_id];
    const Vec2 a = mesh.vertices()[tri.vertices[(m + 1) % 3]].point();
    const Vec2 b = mesh.vertices()[tri.vertices[(m + 2) % 3]].point();
    const Vec2 n = mesh.outward_normal(t, m);
    const double own_weight = nbr[m] ? 0.5 : 1.0;

    int other_block = -1, other_edge = -1, other_rev = 0;
    if (nbr[m]) {
      const Triangle& other = mesh.triangles()[*nbr[m]];
      for (int mm = 0; mm < 3; ++mm) {
        if (other.edges[mm] == edge_id) other_edge = mm;
      }
      assert(other_edge >= 0);
      other_rev = other.vertices[(other_edge + 1) % 3] == tri.vertices[(m + 1) % 3] ? 0 : 1;
      other_block = block_of(*nbr[m]);
    }

    for (std::size_t q = 0; q < edge_rule_.size(); ++q) {
      const double s = edge_rule_.points[q];
      op.rt.evaluate((1.0 - s) * a + s * b, tau, div);
      const double w = edge_rule_.weights[q] * edge.length;
      const auto& own_phi = edge_phi_[m][0][q];
      for (int i = 0; i < nrt; ++i) {
        const double flux = w * tau[i].dot(n);
        for (int j = 0; j < nloc; ++j) op.moments(i, j) += own_weight * flux * own_phi[j];
        if (other_block >= 0) {
          const auto& other_phi = edge_phi_[other_edge][other_rev][q];
          for (int j = 0; j < nloc; ++j) op.moments(i, other_block + j) += 0.5 * flux * other_phi[j];
        }
      }
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(op.mass);
  if (llt.info() != Eigen::Success) {
    throw DegenerateError("RT mass matrix on element " + std::to_string(t) + " is not positive definite");
  }
  op.mass_factor = llt.matrixL();
  op.gradient = llt.solve(op.moments);
  return op;
}

LocalWeakGradient build_local_weak_gradient(const DGSpace& space, int t) {
  return WeakGradientFactory(space).build(t);
}

Vec2 apply_weak_gradient(const LocalWeakGradient& op, const Eigen::Ref<const Eigen::VectorXd>& dofs,
                         const Vec2& point) {
  assert(static_cast<std::size_t>(dofs.size()) == op.patch_dofs.size());
  const Eigen::VectorXd coeffs = op.gradient * dofs;
  const int nrt = op.rt.size();
  std::vector<Vec2> tau(nrt);
  std::vector<double> div(nrt);
  op.rt.evaluate(point, tau, div);
  Vec2 out = Vec2::Zero();
  for (int i = 0; i < nrt; ++i) out += coeffs[i] * tau[i];
  return out;
}

}  // namespace cdg
