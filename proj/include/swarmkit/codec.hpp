#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "swarmkit/agent.hpp"

namespace swarmkit {

// Single-line ASCII wire frame, transparent-serial style:
//   SWRM1,<id>,<tick>,<x>,<y>,<hx>,<hy>,<speed>,<tfx|->,<tfy|->,<flags>*<cs>\n
// Floats use shortest round-trip decimals; <cs> is two lowercase hex digits
// of the XOR of every byte between "SWRM1," and "*". decode(encode(s)) == s
// bit-exactly.
std::string encode_frame(const AgentState& state);

enum class DecodeError {
  None,
  BadFrame,     // missing sentinel/terminator, wrong field count, bad field
  BadChecksum,  // checksum mismatch
};

// Malformed frames yield nullopt; the network layer drops them silently
// (counted), mimicking radio corruption handling.
std::optional<AgentState> decode_frame(std::string_view frame,
                                       DecodeError* error = nullptr);

}  // namespace swarmkit
