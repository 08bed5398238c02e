#include "swarmkit/bodysim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swarmkit {
namespace {

constexpr double kContactStandoff = 0.01;  // m, body never closes past this
constexpr int kRayCount = 6;

// Longest advance along `dir` (unit) from `p` before hitting a barrier,
// capped at `want`.
double free_advance(const World& world, Vec2 p, Vec2 dir, double want) {
  if (want <= 0.0) return 0.0;
  const Vec2 d = dir * want;
  double best_t = 1.0 + kContactStandoff;  // beyond the move: no hit
  for (const Segment& seg : world.all_barriers()) {
    if (const auto t = segment_hit(p, d, seg)) best_t = std::min(best_t, *t);
  }
  if (best_t > 1.0) return want;
  return std::max(0.0, best_t * want - kContactStandoff);
}

}  // namespace

std::vector<Segment> World::all_barriers() const {
  std::vector<Segment> all = walls;
  const Vec2 bl{bounds.xmin, bounds.ymin}, br{bounds.xmax, bounds.ymin};
  const Vec2 tr{bounds.xmax, bounds.ymax}, tl{bounds.xmin, bounds.ymax};
  all.push_back({bl, br});
  all.push_back({br, tr});
  all.push_back({tr, tl});
  all.push_back({tl, bl});
  return all;
}

Pose step_body(const BodyParams& params, const World& world, const Pose& pose,
               double target_speed, Heading target_heading, double dt,
               double max_speed_cap) {
  const double speed =
      std::clamp(target_speed, 0.0, std::min(params.max_speed, max_speed_cap));

  Pose next = pose;
  double forward = 0.0;
  if (params.kind == BodyKindTag::Holonomic) {
    next.heading = target_heading;
    forward = speed * dt;
  } else {
    const double err = pose.heading.angle_to(target_heading);
    const double turn =
        std::clamp(err, -params.max_turn_rate * dt, params.max_turn_rate * dt);
    next.heading = pose.heading.rotated(turn);
    const double remaining = next.heading.angle_to(target_heading);
    forward = speed * dt * std::max(0.0, std::cos(remaining));  // no reverse
  }

  const double allowed = free_advance(world, next.position, next.heading.vec(), forward);
  next.position = next.position + next.heading.vec() * allowed;
  // Numeric safety net: the hit test above already prevents crossings.
  next.position.x = std::clamp(next.position.x, world.bounds.xmin, world.bounds.xmax);
  next.position.y = std::clamp(next.position.y, world.bounds.ymin, world.bounds.ymax);
  return next;
}

SensorReading sense(const World& world, const Pose& pose, SeededRng& rng) {
  SensorReading reading;
  const auto barriers = world.all_barriers();

  for (int i = 0; i < kRayCount; ++i) {
    const double angle = pose.heading.angle() + i * (2.0 * M_PI / kRayCount);
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    const Vec2 d = dir * world.body.sensor_range;
    double best_t = 2.0;
    for (const Segment& seg : barriers) {
      if (const auto t = segment_hit(pose.position, d, seg)) {
        best_t = std::min(best_t, *t);
      }
    }
    if (best_t <= 1.0) {
      reading.obstacle_points.push_back(pose.position + d * best_t);
    }
  }

  double best_dist = std::numeric_limits<double>::infinity();
  for (const Light& light : world.lights) {
    const double dist = distance(light.center, pose.position);
    if (dist > light.detection_radius || dist >= best_dist) continue;
    bool occluded = false;
    for (const Segment& seg : world.walls) {
      if (segments_cross(pose.position, light.center, seg)) {
        occluded = true;
        break;
      }
    }
    if (!occluded) {
      best_dist = dist;
      reading.light = light.center;
    }
  }

  reading.pose = pose;
  if (world.body.noise_pos_sigma > 0.0) {
    reading.pose.position.x += rng.normal(0.0, world.body.noise_pos_sigma);
    reading.pose.position.y += rng.normal(0.0, world.body.noise_pos_sigma);
  }
  if (world.body.noise_heading_sigma > 0.0) {
    reading.pose.heading =
        pose.heading.rotated(rng.normal(0.0, world.body.noise_heading_sigma));
  }
  return reading;
}

}  // namespace swarmkit
