#include "cdg/raviart_thomas.hpp"

#include "cdg/error.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace cdg {

namespace {

// Largest centroid-to-vertex distance: scaled coordinates fill the unit disc,
// which keeps the monomial mass matrix far better conditioned than scaling by
// the diameter.
double radius(const TriangleGeometry& g) {
  double r = 0.0;
  for (const Vec2& c : g.corners) r = std::max(r, (c - g.centroid).norm());
  return r;
}

}  // namespace

RTBasis::RTBasis(const TriangleGeometry& geometry, int degree)
    : degree_(degree), center_(geometry.centroid), scale_(radius(geometry)) {
  if (degree < 0) throw ConfigError("RT degree must be non-negative");
  for (const Kind kind : {Kind::X, Kind::Y}) {
    for (int total = 0; total <= degree; ++total) {
      for (int py = 0; py <= total; ++py) members_.push_back({kind, total - py, py});
    }
  }
  for (int py = 0; py <= degree; ++py) members_.push_back({Kind::Radial, degree - py, py});
  assert(static_cast<int>(members_.size()) == rt_size(degree));
}

void RTBasis::evaluate(const Vec2& x, std::span<Vec2> values, std::span<double> divergence) const {
  assert(values.size() >= members_.size() && divergence.size() >= members_.size());
  const double sx = (x.x() - center_.x()) / scale_;
  const double sy = (x.y() - center_.y()) / scale_;
  std::array<double, 16> px{}, py{};
  px[0] = py[0] = 1.0;
  for (int i = 1; i <= degree_ + 1; ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  const double inv = 1.0 / scale_;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const Member& m = members_[i];
    const double mono = px[m.px] * py[m.py];
    switch (m.kind) {
      case Kind::X:
        values[i] = Vec2(mono, 0.0);
        divergence[i] = m.px > 0 ? m.px * px[m.px - 1] * py[m.py] * inv : 0.0;
        break;
      case Kind::Y:
        values[i] = Vec2(0.0, mono);
        divergence[i] = m.py > 0 ? m.py * px[m.px] * py[m.py - 1] * inv : 0.0;
        break;
      case Kind::Radial:
        values[i] = Vec2(sx * mono, sy * mono);
        // div(xs q) = (2 + deg q) q / scale for homogeneous q.
        divergence[i] = (2.0 + degree_) * mono * inv;
        break;
    }
  }
}

RTBasis build_rt_basis(const TriangleGeometry& geometry, int degree) {
  if (!(geometry.area > 0.0)) throw DegenerateError("degenerate triangle");
  return RTBasis(geometry, degree);
}

}  // namespace cdg
