#include "swarmkit/behaviors.hpp"

#include <algorithm>
#include <cmath>

#include "swarmkit/errors.hpp"

namespace swarmkit {
namespace {

constexpr double kCoincidentSq = 1e-9 * 1e-9;

// Unit azimuth from self toward the neighbor; coincident positions are an
// upstream placement bug.
Vec2 azimuth_or_throw(Vec2 self, Vec2 other) {
  const Vec2 diff = other - self;
  const double d2 = diff.norm_sq();
  if (d2 <= kCoincidentSq) {
    throw CoincidentAgentsError("two agents closer than 1e-9 m");
  }
  return diff / std::sqrt(d2);
}

// Safety stop: zero when a sensed wall point inside the standoff sits within
// 45 degrees of the commanded direction. Shallower approaches keep moving so
// agents can slide along walls while re-spreading. Virtual wall mode uses
// the repulsion sum instead and never stops.
double wall_limited_speed(double cruise, Vec2 self, Heading command,
                          const SensorReading& sensed,
                          const BehaviorSpec& spec) {
  if (spec.wall_mode == WallMode::Virtual) return cruise;
  constexpr double kCos45 = 0.70710678118654752;
  for (const Vec2& p : sensed.obstacle_points) {
    const Vec2 to_wall = p - self;
    const double dist = to_wall.norm();
    if (dist < spec.wall_standoff && dist > 0.0 &&
        to_wall.dot(command.vec()) > kCos45 * dist) {
      return 0.0;
    }
  }
  return cruise;
}

}  // namespace

MotionCommand consensus_step(const AgentState& self, NeighborView neighbors,
                             const BehaviorSpec& spec) {
  if (self.is_leader()) {
    return {self.heading, spec.cruise_speed};
  }
  Vec2 sum = self.heading.vec();
  for (const NeighborEntry& nb : neighbors) sum += nb.state.heading.vec();
  const Vec2 mean = sum / static_cast<double>(neighbors.size() + 1);
  const auto heading = try_normalize(mean);
  return {heading.value_or(self.heading), spec.cruise_speed};
}

MotionCommand perimeter_step(const AgentState& self, NeighborView neighbors,
                             const SensorReading& sensed,
                             const BehaviorSpec& spec) {
  Vec2 s{0.0, 0.0};
  for (const NeighborEntry& nb : neighbors) {
    const Vec2 diff = nb.state.position - self.position;
    const double d2 = diff.norm_sq();
    if (d2 <= kCoincidentSq) {
      throw CoincidentAgentsError("two agents closer than 1e-9 m");
    }
    s += diff / d2;
  }
  if (spec.wall_mode == WallMode::Virtual) {
    for (const Vec2& p : sensed.obstacle_points) {
      const Vec2 diff = p - self.position;
      const double d2 = diff.norm_sq();
      if (d2 > kCoincidentSq) s += diff / d2;
    }
  }
  const auto heading = try_normalize(s * -1.0);
  if (!heading) {
    return {self.heading,
            wall_limited_speed(spec.cruise_speed, self.position, self.heading,
                               sensed, spec)};
  }
  return {*heading, wall_limited_speed(spec.cruise_speed, self.position,
                                       *heading, sensed, spec)};
}

Vec2 exploration_velocity(const AgentState& self, NeighborView neighbors,
                          const BehaviorSpec& spec) {
  const double h = spec.heading_weight ? 1.0 : 0.0;
  if (h > 0.0 && !spec.goal) throw MissingGoalError{};

  Vec2 v{0.0, 0.0};
  if (h > 0.0) {
    const auto bearing = try_normalize(*spec.goal - self.position);
    if (bearing) v += bearing->vec();  // at the goal the bearing vanishes
  }

  if (neighbors.empty()) {
    v += self.heading.vec() * h;
    return v;
  }

  const double n = static_cast<double>(neighbors.size());
  Vec2 middle{0.0, 0.0};
  Vec2 consensus = self.heading.vec();  // R_i always joined by self
  for (const NeighborEntry& nb : neighbors) {
    const Vec2 gamma = azimuth_or_throw(self.position, nb.state.position);
    const double d2 = (nb.state.position - self.position).norm_sq();
    middle += gamma * ((1.0 - h) - spec.p0 * spec.p0 / d2);
    if (distance(nb.state.position, self.position) <= spec.consensus_radius) {
      consensus += nb.state.heading.vec();
    }
  }
  v += middle / n;
  v += consensus * (h / n);
  return v;
}

MotionCommand exploration_step(const AgentState& self, NeighborView neighbors,
                               const BehaviorSpec& spec) {
  const Vec2 v = exploration_velocity(self, neighbors, spec);
  const auto heading = try_normalize(v);
  if (!heading) return {self.heading, 0.0};
  return {*heading, v.norm() * spec.speed_gain};
}

std::optional<Vec2> leader_follower_goal(AgentId leader, NeighborView neighbors,
                                         const std::optional<Vec2>& last_known) {
  const NeighborEntry* best = nullptr;
  for (const NeighborEntry& nb : neighbors) {
    if (nb.state.id != leader) continue;
    if (!best || nb.state.tick > best->state.tick) best = &nb;
  }
  if (best) return best->state.position;
  return last_known;  // nullopt until the leader is first heard
}

SearchStepResult search_and_explore_step(const AgentState& self,
                                         NeighborView neighbors,
                                         const SensorReading& sensed,
                                         const BehaviorSpec& spec) {
  SearchStepResult result;
  result.target_found = self.target_found;  // sticky, never unlearned
  if (!result.target_found && sensed.light) result.target_found = sensed.light;
  if (!result.target_found) {
    // Lowest sender id wins so the outcome is neighbor-order independent.
    const NeighborEntry* donor = nullptr;
    for (const NeighborEntry& nb : neighbors) {
      if (nb.state.target_found &&
          (!donor || nb.state.id < donor->state.id)) {
        donor = &nb;
      }
    }
    if (donor) result.target_found = donor->state.target_found;
  }

  if (!result.target_found) {
    result.phase = 1;
    result.command = perimeter_step(self, neighbors, sensed, spec);
    return result;
  }

  result.phase = 2;
  BehaviorSpec rendezvous = spec;
  rendezvous.heading_weight = 1;
  rendezvous.goal = *result.target_found;
  result.command = exploration_step(self, neighbors, rendezvous);
  return result;
}

ScriptedStepResult scripted_path_step(const AgentState& self,
                                      const BehaviorSpec& spec,
                                      std::size_t next_waypoint) {
  ScriptedStepResult result;
  result.next_waypoint = next_waypoint;
  while (result.next_waypoint < spec.waypoints.size() &&
         distance(spec.waypoints[result.next_waypoint], self.position) <=
             spec.waypoint_tolerance) {
    ++result.next_waypoint;
  }
  if (result.next_waypoint >= spec.waypoints.size()) {
    result.command = {self.heading, 0.0};  // path finished, hold station
    return result;
  }
  const Vec2 to_goal = spec.waypoints[result.next_waypoint] - self.position;
  result.command = {normalize(to_goal), spec.cruise_speed};
  return result;
}

}  // namespace swarmkit
