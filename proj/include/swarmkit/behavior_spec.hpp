#pragma once

#include <optional>
#include <vector>

#include "swarmkit/agent.hpp"
#include "swarmkit/geometry.hpp"

namespace swarmkit {

enum class BehaviorKind {
  Consensus,
  PerimeterDefense,
  Exploration,
  SearchAndExplore,
  ScriptedPath,  // waypoint-driven leader, no swarm terms
};

// How perimeter defense treats sensed walls: hard safety stop inside the
// standoff, or wall points folded into the repulsion sum as virtual
// neighbors (agents then hover off the walls instead of parking).
enum class WallMode { Stop, Virtual };

// Which update rule an agent runs plus its parameters.
struct BehaviorSpec {
  BehaviorKind kind = BehaviorKind::Consensus;

  double p0 = 1.0;              // equilibrium distance, m, > 0
  int heading_weight = 0;       // H in {0,1}: goal-seeking vs pure positioning
  double delta = 1.0;           // time constant of p[k+1] = p[k] + delta*v[k], s
  std::optional<Vec2> goal;     // fixed goal position
  std::optional<AgentId> leader;  // goal = that agent's last heard position
  double consensus_radius = 1.0;  // radius defining R_i; defaults to p0

  double cruise_speed = 0.1;    // m/s commanded by heading-law behaviors
  double speed_gain = 1.0;      // exploration speed = |v| * speed_gain
  double wall_standoff = 0.3;   // m; perimeter safety-stop distance
  WallMode wall_mode = WallMode::Stop;

  std::vector<Vec2> waypoints;      // ScriptedPath only
  double waypoint_tolerance = 0.5;  // m

  bool operator==(const BehaviorSpec&) const = default;
};

}  // namespace swarmkit
