#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "swarmkit/behavior_spec.hpp"
#include "swarmkit/bodysim.hpp"
#include "swarmkit/netsim.hpp"

namespace swarmkit {

// Scheduled mid-run interventions, applied at the start of their tick.
struct RemoveAgentEvent { AgentId id; };
struct SetLeaderEvent { AgentId id; std::optional<double> heading_rad; };
struct DegradeAgentEvent { AgentId id; };
struct SetP0Event { std::optional<AgentId> id; double p0; };  // nullopt: all
struct SetGoalEvent { AgentId id; Vec2 goal; };               // also sets H=1

using EventAction = std::variant<RemoveAgentEvent, SetLeaderEvent,
                                 DegradeAgentEvent, SetP0Event, SetGoalEvent>;

struct ScheduledEvent {
  Tick tick = 0;
  EventAction action;
};

// How initial poses are produced from the "init" stream.
struct Placement {
  enum class Type { Cluster, Uniform, Grid, List };
  Type type = Type::Cluster;

  Vec2 center;              // Cluster / Grid
  double radius = 1.0;      // Cluster
  double min_separation = 0.05;
  double spacing = 1.0;     // Grid
  int columns = 0;          // Grid; 0 = near-square
  std::vector<Vec2> positions;   // List
  std::vector<AgentId> ids;      // List, optional explicit ids

  enum class Headings { Random, Fixed, List };
  Headings headings = Headings::Random;
  double fixed_heading_rad = 0.0;
  std::vector<double> heading_list;

  bool operator==(const Placement&) const = default;
};

enum class TerminationRule { MaxTicks, Consensus, AllReachedTarget };

struct RunSettings {
  Tick max_ticks = 1000;
  double tick_duration = 0.5;  // s
  TerminationRule termination = TerminationRule::MaxTicks;
  double consensus_spread_rad = 1e-3;  // spread threshold (consensus rule)
  int consensus_hold_ticks = 20;
  double reach_radius_factor = 3.0;    // reach = factor * p0 (search rule)
  bool parallel = false;
  bool verbose_net = false;

  bool operator==(const RunSettings&) const = default;
};

struct AgentOverride {
  AgentId id = 0;
  std::optional<BehaviorSpec> behavior;
  bool anchored = false;  // body never moves; broadcasting continues

  bool operator==(const AgentOverride&) const = default;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  int n_agents = 1;
  World world;
  Placement placement;
  BehaviorSpec behavior;                 // default for every agent
  std::vector<AgentOverride> overrides;  // per-agent exceptions
  NetworkModel network;
  RunSettings run;
  std::vector<ScheduledEvent> events;
};

// Strict JSON load: unknown keys are a ConfigError naming the key, as are
// missing required keys and invariant violations. load(save(c)) == c.
ScenarioConfig load_scenario(const std::filesystem::path& file);
ScenarioConfig parse_scenario(const std::string& json_text);
std::string save_scenario(const ScenarioConfig& config);  // canonical text

// Dotted-path override applied to the raw JSON before parsing, e.g.
// "network.loss=off" or the aliases n_agents / seed / max_ticks.
std::string apply_override(const std::string& json_text,
                           const std::string& key, const std::string& value);

// Stable 64-bit hash of the effective config (hex), for summary.json.
std::string config_hash(const ScenarioConfig& config);

}  // namespace swarmkit
