#include "swarmkit/geometry.hpp"

namespace swarmkit {

std::optional<double> segment_hit(Vec2 p, Vec2 d, const Segment& seg) {
  // Solve p + t*d = a + u*(b-a), t in [0,1], u in [0,1].
  const Vec2 e = seg.b - seg.a;
  const double denom = d.cross(e);
  if (std::abs(denom) < 1e-15) return std::nullopt;  // parallel
  const Vec2 w = seg.a - p;
  const double t = w.cross(e) / denom;
  const double u = w.cross(d) / denom;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

bool segments_cross(Vec2 a, Vec2 b, const Segment& seg) {
  return segment_hit(a, b - a, seg).has_value();
}

}  // namespace swarmkit
