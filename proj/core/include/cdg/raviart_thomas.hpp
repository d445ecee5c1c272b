#pragma once

#include "cdg/mesh.hpp"

#include <span>
#include <vector>

namespace cdg {

constexpr int rt_size(int k) { return (k + 1) * (k + 3); }

/// RT_k(T) = [P_k]^2 + x P_k built on the physical triangle from scaled
/// monomials xs = (x - c) / r, where c is the centroid and r the largest
/// centroid-to-vertex distance.
///
/// Member order: (m, 0) for every monomial m of degree <= k (graded), then
/// (0, m) in the same order, then xs * q for the k+1 homogeneous monomials q
/// of degree k.
class RTBasis {
public:
  RTBasis(const TriangleGeometry& geometry, int degree);

  int degree() const { return degree_; }
  int size() const { return rt_size(degree_); }
  const Vec2& center() const { return center_; }
  double scale() const { return scale_; }

  void evaluate(const Vec2& x, std::span<Vec2> values, std::span<double> divergence) const;

private:
  enum class Kind { X, Y, Radial };
  struct Member {
    Kind kind;
    int px;
    int py;
  };

  int degree_;
  Vec2 center_;
  double scale_;
  std::vector<Member> members_;
};

/// Throws DegenerateError for a triangle with non-positive area.
RTBasis build_rt_basis(const TriangleGeometry& geometry, int degree);

}  // namespace cdg
