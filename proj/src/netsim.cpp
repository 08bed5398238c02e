#include "swarmkit/netsim.hpp"

#include <algorithm>
#include <cmath>

#include "swarmkit/errors.hpp"

namespace swarmkit {

std::vector<LossRow> default_loss_table() {
  return {
      {20, 19.5, {{10, 0.96}, {40, 0.91}, {80, 0.88}, {120, 0.84}}},
      {40, 6.9, {{10, 0.89}, {40, 0.86}, {80, 0.81}, {160, 0.66}}},
  };
}

double NetworkModel::success_probability(double distance, int swarm_size) const {
  if (distance > comm_range) return 0.0;
  if (!loss_enabled) return 1.0;
  if (loss_table.empty()) throw EmptyModelError{};

  const LossRow* row = &loss_table.front();
  for (const LossRow& candidate : loss_table) {
    if (std::abs(candidate.n - swarm_size) < std::abs(row->n - swarm_size)) {
      row = &candidate;
    }
  }
  const auto& pts = row->points;
  if (pts.empty()) throw EmptyModelError{};
  if (distance <= pts.front().first) return pts.front().second;
  if (distance >= pts.back().first) return pts.back().second;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (distance <= pts[i].first) {
      const auto [x0, y0] = pts[i - 1];
      const auto [x1, y1] = pts[i];
      return y0 + (distance - x0) / (x1 - x0) * (y1 - y0);
    }
  }
  return pts.back().second;
}

MeshNetwork::MeshNetwork(NetworkModel model, SeededRng rng)
    : model_(std::move(model)), rng_(rng) {}

void MeshNetwork::broadcast(AgentId sender, const AgentState& state) {
  if (broadcast_this_tick_.count(sender)) {
    throw DoubleBroadcastError("agent " + std::to_string(sender) +
                               " broadcast twice in one tick");
  }
  broadcast_this_tick_.insert(sender);
  Message msg;
  msg.sender = sender;
  msg.sent_tick = state.tick;
  msg.frame = encode_frame(state);
  msg.hops_left = model_.relay ? model_.ttl : 0;
  pending_.push_back(std::move(msg));
}

DeliveryReport MeshNetwork::resolve_tick(std::span<const Vec2> positions,
                                         const std::vector<bool>& alive,
                                         std::span<const AgentId> ids,
                                         bool record_pairs) {
  DeliveryReport report;
  report.sent = static_cast<int>(pending_.size());

  int swarm_size = 0;
  for (const bool a : alive) swarm_size += a ? 1 : 0;

  std::vector<Message> batch;
  batch.swap(pending_);
  broadcast_this_tick_.clear();
  // Fixed resolution order keeps the "net" stream draws reproducible.
  std::stable_sort(batch.begin(), batch.end(),
                   [](const Message& a, const Message& b) {
                     if (a.sender != b.sender) return a.sender < b.sender;
                     return a.sent_tick < b.sent_tick;
                   });

  // Freshest delivered copy per (receiver, original sender).
  std::map<std::pair<AgentId, AgentId>, std::size_t> freshest;

  for (const Message& msg : batch) {
    DecodeError decode_error = DecodeError::None;
    const auto state = decode_frame(msg.frame, &decode_error);
    if (!state) {
      ++report.corrupt_dropped;
      continue;
    }
    const AgentId origin = state->id;  // true id carried in the payload
    const AgentId tx = msg.relayer < 0 ? msg.sender : msg.relayer;  // slot
    for (AgentId rx = 0; rx < static_cast<AgentId>(positions.size()); ++rx) {
      if (rx == tx || ids[rx] == origin) continue;  // never loops back
      if (!alive[rx]) continue;
      const double dist = distance(positions[tx], positions[rx]);
      if (dist > model_.comm_range) continue;
      ++report.attempted;
      const double p = model_.success_probability(dist, swarm_size);
      const bool ok = !model_.loss_enabled || rng_.bernoulli(p);
      if (record_pairs) {
        report.pair_outcomes.push_back({ids[tx], ids[rx], dist, ok});
      }
      if (!ok) continue;
      ++report.delivered;

      const auto key = std::make_pair(rx, origin);
      const auto slot = freshest.find(key);
      if (slot == freshest.end()) {
        report.deliveries.push_back({rx, *state, msg.sent_tick});
        freshest.emplace(key, report.deliveries.size() - 1);
      } else if (msg.sent_tick >
                 report.deliveries[slot->second].sent_tick) {
        report.deliveries[slot->second] = {rx, *state, msg.sent_tick};
      }

      // Each agent relays a given (origin, sent_tick) at most once.
      if (msg.hops_left > 0) {
        const auto relay_key = std::make_pair(rx, origin);
        const auto last = relayed_.find(relay_key);
        if (last == relayed_.end() || last->second < msg.sent_tick) {
          relayed_[relay_key] = msg.sent_tick;
          Message hop;
          hop.sender = msg.sender;
          hop.sent_tick = msg.sent_tick;
          hop.frame = msg.frame;
          hop.hops_left = msg.hops_left - 1;
          hop.relayer = rx;
          pending_.push_back(std::move(hop));
        }
      }
    }
  }
  return report;
}

void Mailbox::accept(const AgentState& state, Tick sent_tick, Tick receive_tick) {
  auto it = slots_.find(state.id);
  if (it == slots_.end() || sent_tick > it->second.sent_tick) {
    slots_[state.id] = {state, sent_tick, receive_tick};
  }
}

std::vector<std::pair<AgentState, Tick>> Mailbox::fresh(Tick now,
                                                        int horizon) const {
  std::vector<std::pair<AgentState, Tick>> out;
  out.reserve(slots_.size());
  for (const auto& [id, slot] : slots_) {
    const Tick age = now - slot.receive_tick;
    if (age >= 0 && age <= horizon) out.emplace_back(slot.state, age);
  }
  return out;
}

void Mailbox::clear() { slots_.clear(); }

}  // namespace swarmkit
