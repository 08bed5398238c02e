#pragma once

#include <optional>
#include <vector>

#include "swarmkit/behaviors.hpp"
#include "swarmkit/netsim.hpp"
#include "swarmkit/scenario.hpp"

namespace swarmkit {

// Per-tick log row. One record per tick; the agent set is constant within a
// run (removed agents stay listed with the removed marker).
struct AgentRecord {
  AgentId id = 0;
  Vec2 true_position;
  Heading true_heading;
  Vec2 sensed_position;
  Heading sensed_heading;
  MotionCommand command;
  double speed = 0.0;  // broadcast speed: command speed after body clamping
  int phase = 0;  // search: 1/2; removed agents: -1; otherwise 0
  std::optional<Vec2> target_found;
  bool removed = false;
};

struct StepRecord {
  Tick tick = 0;
  std::vector<AgentRecord> agents;
  int messages_sent = 0;
  int messages_delivered = 0;
  // Mid-run anomalies never abort a run; they are counted here and the
  // affected agent holds its heading at speed 0 for the tick.
  int behavior_anomalies = 0;
  std::vector<DeliveryReport::PairOutcome> pair_outcomes;  // verbose mode
};

enum class Termination { MaxTicks, AllReachedTarget, ConsensusReached };

struct RunResult {
  std::vector<StepRecord> records;
  Termination termination = Termination::MaxTicks;
  Tick final_tick = 0;
  std::vector<AgentState> final_states;  // post-run snapshot, removed included
};

// Synchronous per-tick scheduler. Order within a tick:
//   events -> message delivery -> sensing -> behavior -> broadcast -> body.
// Behaviors only ever see the previous tick's snapshot, so agents may be
// evaluated in any order or in parallel without changing the result.
class Engine {
 public:
  explicit Engine(ScenarioConfig config);  // throws ConfigError

  RunResult run();

  // Programmatic event injection before run(); throws UnknownAgentError.
  void inject_event(Tick tick, EventAction action);

 private:
  ScenarioConfig config_;
};

RunResult run_scenario(ScenarioConfig config);

}  // namespace swarmkit
