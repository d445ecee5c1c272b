#include "cdg/assembly.hpp"

#include "cdg/error.hpp"
#include "cdg/quadrature.hpp"
#include "cdg/weak_gradient.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cdg {

Eigen::VectorXd SparseSPDSystem::expand(const Eigen::VectorXd& free_values) const {
  Eigen::VectorXd full(num_global());
  for (int i = 0; i < num_free(); ++i) full[free_to_global[i]] = free_values[i];
  for (std::size_t c = 0; c < constrained.size(); ++c) full[constrained[c]] = constrained_values[c];
  return full;
}

std::vector<std::vector<int>> element_couplings(const Mesh& mesh) {
  const int nt = mesh.num_triangles();
  std::vector<std::vector<int>> patches(nt);
  for (int t = 0; t < nt; ++t) patches[t] = mesh.edge_patch(t);
  std::vector<std::vector<int>> out(nt);
  for (int t = 0; t < nt; ++t) {
    // t lies in its own patch and in the patch of each neighbour.
    std::vector<int> c;
    for (const int p : patches[t]) c.insert(c.end(), patches[p].begin(), patches[p].end());
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    out[t] = std::move(c);
  }
  return out;
}

namespace {

constexpr int kBatch = 256;

struct ElementContribution {
  int element = -1;
  std::vector<int> patch_dofs;
  Eigen::MatrixXd stiffness;
  Eigen::VectorXd load;
};

}  // namespace

SparseSPDSystem assemble(const DGSpace& space, const ScalarFunction& f, const ScalarFunction& g,
                         const AssemblyOptions& options) {
  const Mesh& mesh = space.mesh();
  const int nt = mesh.num_triangles();
  const int nloc = space.dofs_per_element();
  const int ndof = space.num_dofs();

  SparseSPDSystem sys;
  sys.global_to_free.assign(ndof, -1);
  for (int d = 0; d < ndof; ++d) {
    if (space.is_boundary_dof(d)) {
      sys.constrained.push_back(d);
    } else {
      sys.global_to_free[d] = static_cast<int>(sys.free_to_global.size());
      sys.free_to_global.push_back(d);
    }
  }
  std::vector<int> constrained_slot(ndof, -1);
  sys.constrained_values.resize(static_cast<Eigen::Index>(sys.constrained.size()));
  for (std::size_t c = 0; c < sys.constrained.size(); ++c) {
    const Vec2 p = space.node_coordinates(sys.constrained[c]);
    sys.constrained_values[static_cast<Eigen::Index>(c)] = g(p.x(), p.y());
    constrained_slot[sys.constrained[c]] = static_cast<int>(c);
  }
  const int nfree = sys.num_free();

  // Symbolic pattern: row DOFs of element E couple with every DOF of every
  // element sharing a patch with E. Element-major numbering keeps columns sorted.
  const auto couplings = element_couplings(mesh);
  CsrMatrix& a = sys.matrix;
  a.rows = a.cols = nfree;
  a.row_ptr.assign(static_cast<std::size_t>(nfree) + 1, 0);
  for (int r = 0; r < nfree; ++r) {
    const int e = space.element_of(sys.free_to_global[r]);
    std::int64_t len = 0;
    for (const int c : couplings[e]) {
      for (int j = 0; j < nloc; ++j) len += sys.global_to_free[space.dof(c, j)] >= 0 ? 1 : 0;
    }
    a.row_ptr[r + 1] = a.row_ptr[r] + len;
  }
  a.col_idx.resize(static_cast<std::size_t>(a.row_ptr[nfree]));
  a.values.assign(a.col_idx.size(), 0.0);
  for (int r = 0; r < nfree; ++r) {
    const int e = space.element_of(sys.free_to_global[r]);
    std::int64_t p = a.row_ptr[r];
    for (const int c : couplings[e]) {
      for (int j = 0; j < nloc; ++j) {
        const int fj = sys.global_to_free[space.dof(c, j)];
        if (fj >= 0) a.col_idx[p++] = fj;
      }
    }
  }

  sys.rhs = Eigen::VectorXd::Zero(nfree);

  const WeakGradientFactory factory(space);
  const TriangleRule load_rule = triangle_rule(2 * space.degree() + 4 + options.load_degree_bump);
  std::vector<std::vector<double>> load_phi(load_rule.size(), std::vector<double>(nloc));
  for (std::size_t q = 0; q < load_rule.size(); ++q) space.basis().values(load_rule.points[q], load_phi[q]);

  std::vector<ElementContribution> batch;
  for (int t0 = 0; t0 < nt; t0 += kBatch) {
    const int t1 = std::min(nt, t0 + kBatch);
    batch.assign(static_cast<std::size_t>(t1 - t0), {});
    parallel_for(options.policy, static_cast<std::size_t>(t1 - t0), 8, [&](std::size_t b0, std::size_t b1) {
      for (std::size_t b = b0; b < b1; ++b) {
        ElementContribution& ec = batch[b];
        ec.element = t0 + static_cast<int>(b);
        const LocalWeakGradient op = factory.build(ec.element);
        ec.patch_dofs = op.patch_dofs;
        ec.stiffness = op.stiffness();
        const TriangleGeometry geo = mesh.geometry(ec.element);
        ec.load = Eigen::VectorXd::Zero(nloc);
        std::vector<double> nodal(nloc);
        if (options.load == LoadIntegration::Interpolated) {
          for (int j = 0; j < nloc; ++j) {
            const Vec2 p = space.node_coordinates(space.dof(ec.element, j));
            nodal[j] = f(p.x(), p.y());
          }
        }
        for (std::size_t q = 0; q < load_rule.size(); ++q) {
          double fq = 0.0;
          if (options.load == LoadIntegration::Interpolated) {
            for (int j = 0; j < nloc; ++j) fq += nodal[j] * load_phi[q][j];
          } else {
            const Vec2 x = geo.map(load_rule.points[q]);
            fq = f(x.x(), x.y());
          }
          const double wf = load_rule.weights[q] * geo.area * fq;
          for (int i = 0; i < nloc; ++i) ec.load[i] += wf * load_phi[q][i];
        }
      }
    });

    // Deterministic merge in element order.
    for (const ElementContribution& ec : batch) {
      for (int i = 0; i < nloc; ++i) {
        const int fi = sys.global_to_free[space.dof(ec.element, i)];
        if (fi >= 0) sys.rhs[fi] += ec.load[i];
      }
      const auto& dofs = ec.patch_dofs;
      const int np = static_cast<int>(dofs.size());
      for (int r = 0; r < np; ++r) {
        const int fr = sys.global_to_free[dofs[r]];
        if (fr < 0) continue;
        for (int c = 0; c < np; ++c) {
          const int fc = sys.global_to_free[dofs[c]];
          if (fc >= 0) {
            a.values[a.find(fr, fc)] += ec.stiffness(r, c);
          } else {
            sys.rhs[fr] -= ec.stiffness(r, c) * sys.constrained_values[constrained_slot[dofs[c]]];
          }
        }
      }
    }
  }
  return sys;
}

std::vector<int> element_distances(const Mesh& mesh, int source) {
  std::vector<int> dist(mesh.num_triangles(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop_front();
    for (int i = 0; i < 3; ++i) {
      const auto n = mesh.neighbor(t, i);
      if (n && dist[*n] < 0) {
        dist[*n] = dist[t] + 1;
        queue.push_back(*n);
      }
    }
  }
  return dist;
}

StencilReport stencil_check(const SparseSPDSystem& system, const DGSpace& space) {
  const Mesh& mesh = space.mesh();
  const CsrMatrix& a = system.matrix;
  constexpr int kHorizon = 3;
  StencilReport report;

  // Distances up to the horizon; couplings beyond it report kHorizon + 1.
  auto local_distances = [&](int source) {
    std::map<int, int> dist{{source, 0}};
    std::vector<int> frontier{source};
    for (int d = 1; d <= kHorizon; ++d) {
      std::vector<int> next;
      for (const int t : frontier) {
        for (int i = 0; i < 3; ++i) {
          const auto n = mesh.neighbor(t, i);
          if (n && !dist.count(*n)) {
            dist[*n] = d;
            next.push_back(*n);
          }
        }
      }
      frontier = std::move(next);
    }
    return dist;
  };

  int cached_element = -1;
  std::map<int, int> dist;
  for (int r = 0; r < a.rows; ++r) {
    const int e = space.element_of(system.free_to_global[r]);
    if (e != cached_element) {
      dist = local_distances(e);
      cached_element = e;
    }
    report.max_row_nonzeros = std::max<int>(report.max_row_nonzeros, static_cast<int>(a.row_ptr[r + 1] - a.row_ptr[r]));
    bool has_diagonal = false;
    for (std::int64_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) {
      const int c = a.col_idx[p];
      if (c == r) {
        has_diagonal = true;
        if (!(a.values[p] > 0.0)) report.diagonal_positive = false;
      }
      const int other = space.element_of(system.free_to_global[c]);
      const auto it = dist.find(other);
      const int d = it == dist.end() ? kHorizon + 1 : it->second;
      report.max_element_distance = std::max(report.max_element_distance, d);
      if (d > 2) report.within_distance_two = false;
    }
    if (!has_diagonal) report.diagonal_positive = false;
  }
  return report;
}

}  // namespace cdg
