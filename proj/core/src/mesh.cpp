#include "cdg/mesh.hpp"

#include "cdg/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

namespace cdg {

TriangleGeometry::TriangleGeometry(const std::array<Vec2, 3>& c) : corners(c) {
  jacobian.col(0) = c[1] - c[0];
  jacobian.col(1) = c[2] - c[0];
  const double det = jacobian.determinant();
  area = 0.5 * det;
  if (!(det > 0.0)) {
    throw DegenerateError("triangle has non-positive signed area");
  }
  inverse_transpose = jacobian.inverse().transpose();
  diameter = std::max({(c[1] - c[0]).norm(), (c[2] - c[1]).norm(), (c[0] - c[2]).norm()});
  centroid = (c[0] + c[1] + c[2]) / 3.0;
}

Vec2 TriangleGeometry::map(const Bary& lambda) const {
  return lambda[0] * corners[0] + lambda[1] * corners[1] + lambda[2] * corners[2];
}

Bary TriangleGeometry::barycentric(const Vec2& point) const {
  const Vec2 ref = inverse_transpose.transpose() * (point - corners[0]);
  return {1.0 - ref.x() - ref.y(), ref.x(), ref.y()};
}

Mesh::Mesh(std::vector<Vertex> vertices, std::vector<std::array<int, 3>> triangles, int level)
    : level_(level) {
  // Renumber vertices lexicographically by (y, x). Coordinates are dyadic, so
  // comparisons are exact.
  std::vector<int> order(vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (vertices[a].y != vertices[b].y) return vertices[a].y < vertices[b].y;
    return vertices[a].x < vertices[b].x;
  });
  std::vector<int> new_id(vertices.size());
  vertices_.resize(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_id[order[i]] = static_cast<int>(i);
    vertices_[i] = vertices[order[i]];
  }

  triangles_.resize(triangles.size());
  std::vector<std::pair<std::array<int, 2>, std::pair<int, int>>> sides;  // (sorted pair, (tri, local))
  sides.reserve(3 * triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    Triangle& tri = triangles_[t];
    tri.level = level;
    for (int i = 0; i < 3; ++i) tri.vertices[i] = new_id[triangles[t][i]];
    for (int i = 0; i < 3; ++i) {
      int a = tri.vertices[(i + 1) % 3];
      int b = tri.vertices[(i + 2) % 3];
      if (a > b) std::swap(a, b);
      sides.push_back({{a, b}, {static_cast<int>(t), i}});
    }
  }
  std::sort(sides.begin(), sides.end());

  for (std::size_t s = 0; s < sides.size();) {
    std::size_t e = s + 1;
    while (e < sides.size() && sides[e].first == sides[s].first) ++e;
    if (e - s > 2) throw Error("non-manifold edge in triangulation");
    Edge edge;
    edge.vertices = sides[s].first;
    const auto [left, left_local] = sides[s].second;
    edge.left = left;
    if (e - s == 2) edge.right = sides[s + 1].second.first;
    const Vec2 p = vertices_[edge.vertices[0]].point();
    const Vec2 q = vertices_[edge.vertices[1]].point();
    edge.length = (q - p).norm();
    Vec2 n(q.y() - p.y(), p.x() - q.x());
    n /= edge.length;
    // Orient away from the opposite vertex of the left triangle.
    const Vec2 opposite = vertices_[triangles_[left].vertices[left_local]].point();
    if (n.dot(p - opposite) < 0.0) n = -n;
    edge.normal = n;
    const int id = static_cast<int>(edges_.size());
    for (std::size_t k = s; k < e; ++k) {
      triangles_[sides[k].second.first].edges[sides[k].second.second] = id;
    }
    edges_.push_back(edge);
    s = e;
  }

  h_ = 0.0;
  for (int t = 0; t < num_triangles(); ++t) h_ = std::max(h_, geometry(t).diameter);
}

Mesh Mesh::base() {
  std::vector<Vertex> v = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
  // Forward slash: the diagonal joins (1,0) and (0,1).
  std::vector<std::array<int, 3>> t = {{0, 1, 2}, {1, 3, 2}};
  return Mesh(std::move(v), std::move(t), 1);
}

Mesh Mesh::refined() const {
  std::vector<Vertex> v = vertices_;
  const int nv = static_cast<int>(vertices_.size());
  for (const Edge& e : edges_) {
    const Vertex& a = vertices_[e.vertices[0]];
    const Vertex& b = vertices_[e.vertices[1]];
    v.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
  }
  std::vector<std::array<int, 3>> children;
  children.reserve(4 * triangles_.size());
  for (const Triangle& tri : triangles_) {
    const int a = tri.vertices[0], b = tri.vertices[1], c = tri.vertices[2];
    const int mbc = nv + tri.edges[0];
    const int mca = nv + tri.edges[1];
    const int mab = nv + tri.edges[2];
    children.push_back({a, mab, mca});
    children.push_back({mab, b, mbc});
    children.push_back({mca, mbc, c});
    children.push_back({mbc, mca, mab});
  }
  return Mesh(std::move(v), std::move(children), level_ + 1);
}

Mesh Mesh::at_level(int level) {
  if (level < 1) throw ConfigError("mesh level must be >= 1");
  Mesh m = base();
  for (int l = 1; l < level; ++l) m = m.refined();
  return m;
}

TriangleGeometry Mesh::geometry(int t) const {
  const Triangle& tri = triangles_[t];
  return TriangleGeometry({vertices_[tri.vertices[0]].point(), vertices_[tri.vertices[1]].point(),
                           vertices_[tri.vertices[2]].point()});
}

std::optional<int> Mesh::neighbor(int t, int i) const {
  const Edge& e = edges_[triangles_[t].edges[i]];
  if (e.is_boundary()) return std::nullopt;
  return e.left == t ? *e.right : e.left;
}

Vec2 Mesh::outward_normal(int t, int i) const {
  const Edge& e = edges_[triangles_[t].edges[i]];
  return e.left == t ? e.normal : Vec2(-e.normal);
}

std::vector<int> Mesh::edge_patch(int t) const {
  std::vector<int> patch{t};
  for (int i = 0; i < 3; ++i) {
    if (auto n = neighbor(t, i)) patch.push_back(*n);
  }
  std::sort(patch.begin(), patch.end());
  return patch;
}

void Mesh::write(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  for (const Vertex& v : vertices_) out << "v " << v.x << ' ' << v.y << '\n';
  for (const Triangle& t : triangles_) {
    out << "t " << t.vertices[0] << ' ' << t.vertices[1] << ' ' << t.vertices[2] << '\n';
  }
  for (const Edge& e : edges_) {
    out << "e " << e.vertices[0] << ' ' << e.vertices[1] << ' ' << e.left << ' ' << e.right.value_or(-1) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace cdg
