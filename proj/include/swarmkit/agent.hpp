#pragma once

#include <cstdint>
#include <optional>

#include "swarmkit/geometry.hpp"

namespace swarmkit {

using AgentId = std::int32_t;
using Tick = std::int64_t;

// Role flag bits carried in the broadcast state.
namespace role {
inline constexpr std::uint8_t kLeader = 1;
inline constexpr std::uint8_t kDegraded = 2;
}  // namespace role

struct Pose {
  Vec2 position;
  Heading heading;
};

// The broadcastable snapshot of one agent at a discrete tick.
struct AgentState {
  AgentId id = 0;
  Tick tick = 0;
  Vec2 position;
  Heading heading;
  double speed = 0.0;  // m/s, >= 0, already clamped to the body limit
  std::optional<Vec2> target_found;
  std::uint8_t role_flags = 0;

  bool is_leader() const { return role_flags & role::kLeader; }
  bool is_degraded() const { return role_flags & role::kDegraded; }

  bool operator==(const AgentState&) const = default;
};

}  // namespace swarmkit
