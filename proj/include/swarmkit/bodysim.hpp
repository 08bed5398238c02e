#pragma once

#include <optional>
#include <vector>

#include "swarmkit/agent.hpp"
#include "swarmkit/geometry.hpp"
#include "swarmkit/rng.hpp"

namespace swarmkit {

struct Light {
  Vec2 center;
  double detection_radius = 1.0;  // m, > 0
};

enum class BodyKindTag { DifferentialDrive, Holonomic };

struct BodyParams {
  BodyKindTag kind = BodyKindTag::DifferentialDrive;
  double max_speed = 0.20;       // m/s ground robots; 1.0 holonomic buoys
  double max_turn_rate = 2.0;    // rad/s, differential drive only
  double sensor_range = 0.8;     // m, range-finder reach
  double noise_pos_sigma = 0.01;       // m, additive pose noise
  double noise_heading_sigma = 0.5 * M_PI / 180.0;  // rad

  bool operator==(const BodyParams&) const = default;
};

inline BodyParams ground_robot_body() { return BodyParams{}; }

inline BodyParams buoy_body() {
  BodyParams p;
  p.kind = BodyKindTag::Holonomic;
  p.max_speed = 1.0;
  return p;
}

// Arena: axis-aligned bounds (whose edges are physical walls), interior wall
// segments, and light-source targets. Agents are points and only sense each
// other via the network.
struct World {
  Rect bounds{0.0, 0.0, 13.5, 6.2};
  std::vector<Segment> walls;
  std::vector<Light> lights;
  BodyParams body;

  // Interior walls plus the four bounds edges.
  std::vector<Segment> all_barriers() const;
};

struct SensorReading {
  std::vector<Vec2> obstacle_points;  // world coords of detected wall points
  std::optional<Vec2> light;          // light center when in radius + LOS
  Pose pose;                          // ground truth plus Gaussian noise
};

// Kinematic step. Holonomic bodies snap to the target heading; differential
// drives turn at most max_turn_rate*dt and advance speed*dt*max(0, cos(err))
// along the new heading (no reverse). Motion into a barrier stops at the
// contact point minus a 1 cm standoff; positions never penetrate.
Pose step_body(const BodyParams& params, const World& world, const Pose& pose,
               double target_speed, Heading target_heading, double dt,
               double max_speed_cap);

// Six rays at 60 degree spacing starting from the current heading, plus the
// nearest unoccluded light within its detection radius. Pose noise is drawn
// from the caller's "sense" stream; sigma 0 reports the exact pose.
SensorReading sense(const World& world, const Pose& pose, SeededRng& rng);

}  // namespace swarmkit
