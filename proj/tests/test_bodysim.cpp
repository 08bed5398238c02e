#include <cmath>

#include "doctest.h"
#include "swarmkit/bodysim.hpp"

using namespace swarmkit;

namespace {

World open_room() {
  World w;
  w.bounds = {0.0, 0.0, 13.5, 6.2};
  w.body = ground_robot_body();
  return w;
}

World quiet_room() {
  World w = open_room();
  w.body.noise_pos_sigma = 0.0;
  w.body.noise_heading_sigma = 0.0;
  return w;
}

}  // namespace

TEST_CASE("holonomic straight-line kinematics") {
  World w = open_room();
  w.body = buoy_body();
  w.bounds = {-100, -100, 100, 100};
  const Pose pose{{0, 0}, Heading::from_angle(M_PI)};
  const Pose next =
      step_body(w.body, w, pose, 1.0, Heading::from_angle(0.0), 0.5, 1e9);
  CHECK(next.position.x == doctest::Approx(0.5));
  CHECK(next.position.y == doctest::Approx(0.0));
  CHECK(next.heading.angle() == doctest::Approx(0.0));  // snaps instantly
}

TEST_CASE("differential drive: 180 degree error gives no forward progress") {
  const World w = quiet_room();
  const Pose pose{{5, 3}, Heading::from_angle(0.0)};
  const Pose next =
      step_body(w.body, w, pose, 0.2, Heading::from_angle(M_PI), 0.5, 1e9);
  CHECK(next.position.x == doctest::Approx(5.0));
  CHECK(next.position.y == doctest::Approx(3.0));
  // It turned as far as the rate limit allows.
  CHECK(std::abs(next.heading.angle()) == doctest::Approx(1.0));
}

TEST_CASE("differential drive advances along the turned heading") {
  const World w = quiet_room();
  const Pose pose{{5, 3}, Heading::from_angle(0.0)};
  const Pose next =
      step_body(w.body, w, pose, 0.2, Heading::from_angle(0.3), 0.5, 1e9);
  // Full 0.3 rad turn fits inside max_turn_rate*dt = 1 rad.
  CHECK(next.heading.angle() == doctest::Approx(0.3));
  const double dist = distance(next.position, pose.position);
  CHECK(dist == doctest::Approx(0.2 * 0.5));  // cos(0) after the turn
}

TEST_CASE("command into a wall stops at the standoff") {
  World w = quiet_room();
  w.body = buoy_body();
  w.body.noise_pos_sigma = 0.0;
  w.body.noise_heading_sigma = 0.0;
  const Pose pose{{13.0, 3.0}, Heading::from_angle(0.0)};
  const Pose next =
      step_body(w.body, w, pose, 1.0, Heading::from_angle(0.0), 5.0, 1e9);
  CHECK(next.position.x == doctest::Approx(13.5 - 0.01));
  CHECK(next.position.y == doctest::Approx(3.0));
}

TEST_CASE("property: no penetration and speed limit under random commands") {
  World w = quiet_room();
  w.walls.push_back({{6.0, 1.0}, {6.0, 5.0}});
  SeededRng rng(101, "walk");
  for (int body = 0; body < 2; ++body) {
    w.body = body == 0 ? ground_robot_body() : buoy_body();
    w.body.noise_pos_sigma = 0.0;
    w.body.noise_heading_sigma = 0.0;
    Pose pose{{5.0, 3.0}, Heading::from_angle(0.0)};
    const double dt = 0.5;
    for (int step = 0; step < 2000; ++step) {
      const Pose prev = pose;
      pose = step_body(w.body, w, pose, rng.uniform(0.0, 2.0),
                       Heading::from_angle(rng.uniform(-M_PI, M_PI)), dt, 1e9);
      CHECK(w.bounds.contains(pose.position));
      CHECK(distance(pose.position, prev.position) <=
            w.body.max_speed * dt + 1e-9);
      // Never crosses the interior wall (around its ends is legal).
      CHECK_FALSE(segments_cross(prev.position, pose.position,
                                 {{6.0, 1.0}, {6.0, 5.0}}));
    }
  }
}

TEST_CASE("degraded speed cap halves the displacement") {
  World w = quiet_room();
  w.body = buoy_body();
  const Pose pose{{5, 3}, Heading::from_angle(0.0)};
  const Pose next =
      step_body(w.body, w, pose, 1.0, Heading::from_angle(0.0), 1.0, 0.5);
  CHECK(distance(next.position, pose.position) == doctest::Approx(0.5));
}

TEST_CASE("sense: perpendicular ray reports the foot of the perpendicular") {
  World w = quiet_room();
  SeededRng rng(3, "sense");
  // Facing +x, wall at x = 13.5 is 0.5 m away from (13.0, 3.0).
  const Pose pose{{13.0, 3.0}, Heading::from_angle(0.0)};
  const SensorReading reading = sense(w, pose, rng);
  REQUIRE(!reading.obstacle_points.empty());
  bool found = false;
  for (const Vec2& p : reading.obstacle_points) {
    if (std::abs(p.x - 13.5) < 1e-9 && std::abs(p.y - 3.0) < 1e-9) found = true;
  }
  CHECK(found);
  CHECK(reading.pose.position == pose.position);  // sigma = 0: exact
  CHECK(reading.pose.heading == pose.heading);
}

TEST_CASE("sense: obstacle points stay within sensor range") {
  World w = quiet_room();
  SeededRng rng(4, "sense");
  const Pose pose{{13.0, 6.0}, Heading::from_angle(0.7)};
  for (const Vec2& p : sense(w, pose, rng).obstacle_points) {
    CHECK(distance(p, pose.position) <= w.body.sensor_range + 1e-9);
  }
}

TEST_CASE("sense: light radius cutoff and wall occlusion") {
  World w = quiet_room();
  w.lights.push_back({{10.0, 3.0}, 1.5});
  SeededRng rng(5, "sense");

  const Pose far{{2.0, 3.0}, Heading::from_angle(0.0)};
  CHECK_FALSE(sense(w, far, rng).light.has_value());

  const Pose near{{9.0, 3.0}, Heading::from_angle(0.0)};
  CHECK(sense(w, near, rng).light == Vec2{10.0, 3.0});

  w.walls.push_back({{9.5, 2.0}, {9.5, 4.0}});
  CHECK_FALSE(sense(w, near, rng).light.has_value());
}

TEST_CASE("sense: identical pose and draw state give identical readings") {
  World w = open_room();  // noise on
  const Pose pose{{4.0, 3.0}, Heading::from_angle(1.0)};
  SeededRng a(9, "sense");
  SeededRng b(9, "sense");
  const SensorReading ra = sense(w, pose, a);
  const SensorReading rb = sense(w, pose, b);
  CHECK(ra.pose.position == rb.pose.position);
  CHECK(ra.pose.heading == rb.pose.heading);
  CHECK(ra.obstacle_points == rb.obstacle_points);
}
