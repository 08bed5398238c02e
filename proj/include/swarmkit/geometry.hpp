#pragma once

#include <cmath>
#include <optional>

#include "swarmkit/errors.hpp"

namespace swarmkit {

// Threshold below which a vector counts as zero for normalization purposes.
inline constexpr double kZeroVectorThreshold = 1e-12;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr bool operator==(const Vec2&) const = default;

  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
  constexpr double norm_sq() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

inline Vec2 rotated(Vec2 v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Unit direction vector (cos θ, sin θ). Every Heading built through this API
// has norm 1 within 1e-9.
class Heading {
 public:
  Heading() : v_{1.0, 0.0} {}

  static Heading from_angle(double radians) {
    return Heading({std::cos(radians), std::sin(radians)});
  }

  // Accepts components already known to be unit within 1e-9 and stores them
  // bit-exactly (the wire codec depends on this). Returns nullopt otherwise.
  static std::optional<Heading> from_unit_components(double x, double y) {
    const Vec2 v{x, y};
    if (!v.finite() || std::abs(v.norm() - 1.0) > 1e-9) return std::nullopt;
    return Heading(v);
  }

  Vec2 vec() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double angle() const { return std::atan2(v_.y, v_.x); }

  Heading rotated(double angle) const {
    return Heading(swarmkit::rotated(v_, angle));
  }

  // Signed angle from this heading to `to`, in (-pi, pi].
  double angle_to(Heading to) const {
    return std::atan2(v_.cross(to.v_), v_.dot(to.v_));
  }

  bool operator==(const Heading&) const = default;

 private:
  friend Heading normalize(Vec2);
  friend std::optional<Heading> try_normalize(Vec2);
  explicit Heading(Vec2 v) : v_(v) {}
  Vec2 v_;
};

// v / |v|. Throws ZeroVectorError when |v| <= 1e-12; callers that prefer the
// degenerate-input rule of their behavior use try_normalize instead.
inline std::optional<Heading> try_normalize(Vec2 v) {
  const double n = v.norm();
  if (!std::isfinite(n) || n <= kZeroVectorThreshold) return std::nullopt;
  return Heading(v / n);
}

inline Heading normalize(Vec2 v) {
  auto h = try_normalize(v);
  if (!h) throw ZeroVectorError{};
  return *h;
}

struct Segment {
  Vec2 a;
  Vec2 b;
};

struct Rect {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  constexpr bool contains(Vec2 p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  constexpr double width() const { return xmax - xmin; }
  constexpr double height() const { return ymax - ymin; }
  constexpr Vec2 center() const { return {(xmin + xmax) / 2, (ymin + ymax) / 2}; }
  constexpr bool operator==(const Rect&) const = default;
};

// Earliest intersection of the directed segment p -> p+d with `seg`,
// as a parameter t in [0,1] along d. nullopt when they do not cross.
std::optional<double> segment_hit(Vec2 p, Vec2 d, const Segment& seg);

// True when the open segment (a,b) crosses `seg` (used for line-of-sight).
bool segments_cross(Vec2 a, Vec2 b, const Segment& seg);

}  // namespace swarmkit
