#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarmkit/agent.hpp"
#include "swarmkit/behavior_spec.hpp"
#include "swarmkit/bodysim.hpp"
#include "swarmkit/geometry.hpp"

namespace swarmkit {

// One received neighbor snapshot. The view never contains the agent itself
// and entries past the staleness horizon are excluded upstream.
struct NeighborEntry {
  AgentState state;
  Tick age = 0;  // ticks since message receipt, >= 0
};

using NeighborView = std::span<const NeighborEntry>;

// Movement of the robot for the next time window.
struct MotionCommand {
  Heading target_heading;
  double target_speed = 0.0;  // m/s; the body clamps to its own limit

  bool operator==(const MotionCommand&) const = default;
};

// All steps are pure functions of their arguments: same inputs, same output,
// in any neighbor order. Safe to evaluate every agent in parallel against the
// previous tick's snapshot.

// Heading consensus: average heading of the agent and its neighbors,
// renormalized. Mean below the zero threshold keeps the current heading.
// Leaders ignore the average and hold their own heading.
MotionCommand consensus_step(const AgentState& self, NeighborView neighbors,
                             const BehaviorSpec& spec);

// Perimeter defense: s = sum (p_j - p_i)/|p_j - p_i|^2, move along
// -s (away from the density-weighted neighbor direction). Speed drops to 0
// when a sensed wall closer than wall_standoff lies in the commanded
// direction. Throws CoincidentAgentsError when a neighbor sits within 1e-9 m.
MotionCommand perimeter_step(const AgentState& self, NeighborView neighbors,
                             const SensorReading& sensed,
                             const BehaviorSpec& spec);

// Exploration / lattice formation velocity rule:
//   v = H*beta + (1/N) sum_j gamma_ij*((1-H) - p0^2/d_ij^2)
//       + (H/N) sum_{j in R_i + self} theta_j
// with beta the unit bearing to the goal, gamma_ij the unit azimuth to
// neighbor j, and R_i the neighbors within consensus_radius. N = 0 makes the
// middle sum vanish and the third term H*theta_self. Returns heading
// normalize(v) and speed |v|*speed_gain; |v| below threshold keeps the
// current heading at speed 0. Throws MissingGoalError when H=1 without a
// goal, CoincidentAgentsError as above.
MotionCommand exploration_step(const AgentState& self, NeighborView neighbors,
                               const BehaviorSpec& spec);

// Raw exploration velocity before the heading/speed packaging. Exposed for
// equilibrium and equivariance checks.
Vec2 exploration_velocity(const AgentState& self, NeighborView neighbors,
                          const BehaviorSpec& spec);

// Most recent position of the leader heard in `neighbors`, else last_known,
// else nullopt (caller runs with H=0 until the leader is heard).
std::optional<Vec2> leader_follower_goal(AgentId leader,
                                         NeighborView neighbors,
                                         const std::optional<Vec2>& last_known);

// Two-phase search: perimeter defense until a light is known (own sensing or
// a neighbor's broadcast), then exploration with H=1 toward it. Target
// knowledge is sticky.
struct SearchStepResult {
  MotionCommand command;
  std::optional<Vec2> target_found;  // updated sticky knowledge
  int phase = 1;                     // 1 = searching, 2 = rendezvous
};

SearchStepResult search_and_explore_step(const AgentState& self,
                                         NeighborView neighbors,
                                         const SensorReading& sensed,
                                         const BehaviorSpec& spec);

// Waypoint follower used for scripted leaders. `next_waypoint` is the
// caller-owned progress index; the returned value may advance it.
struct ScriptedStepResult {
  MotionCommand command;
  std::size_t next_waypoint = 0;
};

ScriptedStepResult scripted_path_step(const AgentState& self,
                                      const BehaviorSpec& spec,
                                      std::size_t next_waypoint);

}  // namespace swarmkit
