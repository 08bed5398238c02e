#pragma once

#include <stdexcept>
#include <string>

namespace swarmkit {

struct SwarmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario / configuration problems detected before a run starts.
struct ConfigError : SwarmError {
  using SwarmError::SwarmError;
};

struct ZeroVectorError : SwarmError {
  ZeroVectorError() : SwarmError("cannot normalize a near-zero vector") {}
};

// Two agents closer than 1e-9 m: upstream placement bug, never divide by zero.
struct CoincidentAgentsError : SwarmError {
  using SwarmError::SwarmError;
};

struct MissingGoalError : SwarmError {
  MissingGoalError() : SwarmError("exploration with H=1 requires a goal") {}
};

struct UnknownAgentError : SwarmError {
  using SwarmError::SwarmError;
};

struct EmptyModelError : SwarmError {
  EmptyModelError() : SwarmError("loss enabled but loss table is empty") {}
};

struct DoubleBroadcastError : SwarmError {
  using SwarmError::SwarmError;
};

struct IoError : SwarmError {
  using SwarmError::SwarmError;
};

}  // namespace swarmkit
