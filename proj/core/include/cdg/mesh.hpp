#pragma once

#include <Eigen/Core>

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

namespace cdg {

using Vec2 = Eigen::Vector2d;
using Bary = std::array<double, 3>;

struct Vertex {
  double x = 0.0;
  double y = 0.0;

  Vec2 point() const { return {x, y}; }
};

struct Triangle {
  std::array<int, 3> vertices{};  ///< counterclockwise
  std::array<int, 3> edges{};     ///< edges[i] is opposite vertices[i]
  int level = 1;
};

struct Edge {
  std::array<int, 2> vertices{};  ///< ascending vertex ids
  int left = -1;                  ///< lowest-index incident triangle
  std::optional<int> right;       ///< absent on the boundary
  Vec2 normal = Vec2::Zero();     ///< unit, outward from `left`
  double length = 0.0;

  bool is_boundary() const { return !right.has_value(); }
};

/// Affine map from the reference triangle (0,0),(1,0),(0,1) onto a physical triangle.
struct TriangleGeometry {
  std::array<Vec2, 3> corners;
  Eigen::Matrix2d jacobian;          ///< columns: corners[1]-corners[0], corners[2]-corners[0]
  Eigen::Matrix2d inverse_transpose; ///< maps reference gradients to physical gradients
  double area = 0.0;
  double diameter = 0.0;
  Vec2 centroid = Vec2::Zero();

  explicit TriangleGeometry(const std::array<Vec2, 3>& corners);

  Vec2 map(const Bary& lambda) const;
  Bary barycentric(const Vec2& point) const;
  Vec2 physical_gradient(const Vec2& reference_gradient) const { return inverse_transpose * reference_gradient; }
};

/// Conforming triangulation of the unit square obtained by uniform quadrisection
/// of a two-triangle base mesh. Immutable once constructed.
class Mesh {
public:
  /// Unit square cut by the diagonal from (1,0) to (0,1).
  static Mesh base();

  /// Red refinement: every triangle is split into four congruent children.
  Mesh refined() const;

  /// Base mesh refined `level - 1` times.
  static Mesh at_level(int level);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int level() const { return level_; }
  /// Largest triangle diameter.
  double h() const { return h_; }

  int num_triangles() const { return static_cast<int>(triangles_.size()); }

  TriangleGeometry geometry(int t) const;

  /// Triangle across local edge `i` of `t`, or nullopt on the boundary.
  std::optional<int> neighbor(int t, int i) const;
  /// Unit outward normal of `t` on its local edge `i`.
  Vec2 outward_normal(int t, int i) const;
  /// `t` and every triangle sharing an edge with it, ascending.
  std::vector<int> edge_patch(int t) const;

  /// Plain-text dump: `v x y`, `t i j k`, `e i j left right` (right = -1 on the boundary).
  void write(std::ostream& out) const;

private:
  Mesh(std::vector<Vertex> vertices, std::vector<std::array<int, 3>> triangles, int level);

  std::vector<Vertex> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  int level_ = 1;
  double h_ = 0.0;
};

inline Mesh base_mesh() { return Mesh::base(); }
inline Mesh refine(const Mesh& m) { return m.refined(); }
inline std::vector<int> edge_patch(const Mesh& m, int t) { return m.edge_patch(t); }

}  // namespace cdg
