#pragma once

#include "cdg/mesh.hpp"

#include <vector>

namespace cdg {

/// Highest polynomial degree for which rules can be requested.
inline constexpr int kMaxQuadratureDegree = 30;

/// Rule on a triangle; weights are area-normalized (they sum to one).
struct TriangleRule {
  std::vector<Bary> points;
  std::vector<double> weights;
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Rule on [0,1]; weights sum to one.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights mapped to [0,1].
EdgeRule gauss_legendre(int num_points);

/// Gauss rule with ceil((degree+1)/2) points. Throws ConfigError outside [0, kMaxQuadratureDegree].
EdgeRule edge_rule(int exact_degree);

/// Collapsed (Duffy) tensor Gauss rule; degrees 0-1 give the centroid rule and
/// degree 2 the classic 3-point rule. Throws ConfigError outside [0, kMaxQuadratureDegree].
TriangleRule triangle_rule(int exact_degree);

}  // namespace cdg
