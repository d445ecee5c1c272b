#pragma once

#include "cdg/mesh.hpp"

#include <array>
#include <span>
#include <vector>

namespace cdg {

inline constexpr int kMinDegree = 1;
inline constexpr int kMaxDegree = 5;

/// Number of P_k Lagrange nodes on a triangle.
constexpr int lagrange_size(int k) { return (k + 1) * (k + 2) / 2; }

/// Nodal P_k basis on the principal lattice of a triangle.
///
/// Node `i` has multi-index (a0, a1, a2) with a0 + a1 + a2 = k and barycentric
/// coordinates (a0, a1, a2) / k. Nodes are ordered row by row: a2 = 0..k, then
/// a1 = 0..k-a2. Reference coordinates are (xi, eta) = (lambda1, lambda2).
class LagrangeBasis {
public:
  explicit LagrangeBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(indices_.size()); }

  const std::array<int, 3>& multi_index(int i) const { return indices_[i]; }
  Bary node(int i) const;

  /// True when node `i` lies on the local edge opposite vertex `edge`.
  bool on_edge(int i, int edge) const { return indices_[i][edge] == 0; }

  void values(const Bary& lambda, std::span<double> out) const;
  /// Values and reference-coordinate gradients.
  void evaluate(const Bary& lambda, std::span<double> values, std::span<Vec2> gradients) const;

private:
  int degree_;
  std::vector<std::array<int, 3>> indices_;
};

struct LagrangeValues {
  std::vector<double> values;
  std::vector<Vec2> gradients;  ///< reference coordinates
};

LagrangeValues eval_lagrange(int degree, const Bary& lambda);

}  // namespace cdg
