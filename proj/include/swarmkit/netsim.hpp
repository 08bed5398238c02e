#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "swarmkit/agent.hpp"
#include "swarmkit/codec.hpp"
#include "swarmkit/rng.hpp"

namespace swarmkit {

// One measured loss profile: success probability vs pairwise distance inside
// a swarm of n units with mean nearest-neighbor distance r0.
struct LossRow {
  int n = 0;
  double r0 = 0.0;
  std::vector<std::pair<double, double>> points;  // (distance m, probability)

  bool operator==(const LossRow&) const = default;
};

// Field-measured pairwise delivery rates for mobile mesh radios.
std::vector<LossRow> default_loss_table();

struct NetworkModel {
  double comm_range = 310.0;  // m, hard metric cutoff
  bool loss_enabled = false;
  bool relay = false;
  int ttl = 3;                // relay hop limit
  int staleness_ticks = 5;    // NeighborView expiry horizon
  std::vector<LossRow> loss_table = default_loss_table();

  // Row with n nearest to swarm_size, linear in distance within the row,
  // clamped at the ends, 0 beyond comm_range, 1 everywhere when loss is off.
  // Throws EmptyModelError when loss is enabled with an empty table.
  double success_probability(double distance, int swarm_size) const;

  bool operator==(const NetworkModel&) const = default;
};

struct Message {
  AgentId sender = 0;
  Tick sent_tick = 0;
  std::string frame;    // encoded payload; payload.id == sender
  int hops_left = 0;    // remaining relay hops
  AgentId relayer = -1;  // -1 for the original broadcast
};

// Outcome of one tick's delivery resolution.
struct DeliveryReport {
  struct Delivered {
    AgentId receiver;
    AgentState state;
    Tick sent_tick;
  };
  std::vector<Delivered> deliveries;  // after duplicate collapsing
  int sent = 0;                       // frames pending at start of tick
  int attempted = 0;                  // in-range receiver candidates
  int delivered = 0;                  // successful link transmissions
  int corrupt_dropped = 0;            // frames rejected by the codec

  struct PairOutcome {
    AgentId sender;
    AgentId receiver;
    double distance;
    bool delivered;
  };
  std::vector<PairOutcome> pair_outcomes;  // verbose mode only
};

// Simulated metric-range broadcast mailbox. Broadcasts enqueue during a tick;
// the engine resolves deliveries once per tick (one-tick latency) with
// independent per-link Bernoulli loss drawn from the seeded "net" stream.
// No agent ever receives its own state back.
class MeshNetwork {
 public:
  MeshNetwork(NetworkModel model, SeededRng rng);

  // At most one broadcast per agent per tick (DoubleBroadcastError).
  void broadcast(AgentId sender, const AgentState& state);

  // Delivers everything pending. Spans are indexed by agent slot; `ids` maps
  // slots to true agent ids (a receiver never gets its own state back).
  // Relay re-enqueues delivered copies for the next tick while hops remain.
  DeliveryReport resolve_tick(std::span<const Vec2> positions,
                              const std::vector<bool>& alive,
                              std::span<const AgentId> ids,
                              bool record_pairs = false);

  const NetworkModel& model() const { return model_; }

 private:
  NetworkModel model_;
  SeededRng rng_;
  std::vector<Message> pending_;
  std::set<AgentId> broadcast_this_tick_;
  // Last relayed sent_tick per (relayer, original sender): relay once.
  std::map<std::pair<AgentId, AgentId>, Tick> relayed_;
};

// Per-agent mailbox keeping the freshest state per sender.
class Mailbox {
 public:
  void accept(const AgentState& state, Tick sent_tick, Tick receive_tick);
  // Entries with receipt age <= horizon, oldest sender-id first.
  std::vector<std::pair<AgentState, Tick>> fresh(Tick now, int horizon) const;
  void clear();

 private:
  struct Slot {
    AgentState state;
    Tick sent_tick;
    Tick receive_tick;
  };
  std::map<AgentId, Slot> slots_;
};

}  // namespace swarmkit
