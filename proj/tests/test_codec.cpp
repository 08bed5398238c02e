#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "swarmkit/codec.hpp"
#include "swarmkit/rng.hpp"

using namespace swarmkit;

namespace {

AgentState random_state(SeededRng& rng) {
  AgentState s;
  s.id = static_cast<AgentId>(rng.next_below(10000));
  s.tick = static_cast<Tick>(rng.next_below(1000000));
  s.position = {rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4)};
  s.heading = Heading::from_angle(rng.uniform(-M_PI, M_PI));
  s.speed = rng.uniform(0.0, 2.0);
  if (rng.bernoulli(0.5)) {
    s.target_found = Vec2{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
  }
  s.role_flags = static_cast<std::uint8_t>(rng.next_below(4));
  return s;
}

}  // namespace

TEST_CASE("decode(encode(s)) == s bit-exactly over randomized states") {
  SeededRng rng(2024, "codec");
  int mismatches = 0;
  for (int i = 0; i < 2000; ++i) {
    const AgentState s = random_state(rng);
    const auto back = decode_frame(encode_frame(s));
    if (!back || !(*back == s)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("spec frame decodes to the documented state") {
  // Checksum 2e computed independently by XOR over the payload bytes.
  const std::string frame = "SWRM1,7,12,1.5,-2.0,1,0,0.2,-,-,0*2e\n";
  const auto state = decode_frame(frame);
  REQUIRE(state.has_value());
  CHECK(state->id == 7);
  CHECK(state->tick == 12);
  CHECK(state->position == Vec2{1.5, -2.0});
  CHECK(state->heading.x() == 1.0);
  CHECK(state->heading.y() == 0.0);
  CHECK(state->speed == 0.2);
  CHECK_FALSE(state->target_found.has_value());
  CHECK(state->role_flags == 0);
}

TEST_CASE("flipped payload byte is caught by the checksum") {
  const std::string frame = "SWRM1,7,12,1.5,-2.0,1,0,0.2,-,-,0*2e\n";
  std::string corrupt = frame;
  corrupt[8] = '3';  // tick field: 12 -> 32
  DecodeError error = DecodeError::None;
  CHECK_FALSE(decode_frame(corrupt, &error).has_value());
  CHECK(error == DecodeError::BadChecksum);
}

TEST_CASE("every single-byte mutation of a frame is rejected") {
  SeededRng rng(7, "mutate");
  for (int trial = 0; trial < 20; ++trial) {
    const AgentState s = random_state(rng);
    const std::string frame = encode_frame(s);
    for (std::size_t pos = 0; pos < frame.size(); ++pos) {
      std::string corrupt = frame;
      // A different printable byte; also try NUL for structural damage.
      corrupt[pos] = corrupt[pos] == 'x' ? 'y' : 'x';
      if (corrupt == frame) continue;
      DecodeError error = DecodeError::None;
      const auto decoded = decode_frame(corrupt, &error);
      CHECK_FALSE(decoded.has_value());
    }
  }
}

TEST_CASE("structural damage reports BadFrame") {
  DecodeError error = DecodeError::None;
  CHECK_FALSE(decode_frame("HELLO,1,2*aa\n", &error).has_value());
  CHECK(error == DecodeError::BadFrame);

  CHECK_FALSE(decode_frame("SWRM1,7,12,1.5,-2.0,1,0,0.2,-,-,0*2e", &error)
                  .has_value());  // missing terminator
  CHECK(error == DecodeError::BadFrame);

  // Field count wrong but checksum valid: 0x37 ^ 0x2c ^ 0x38 = '7'^','^'8'.
  const std::string short_payload = "7,8";
  unsigned char cs = 0;
  for (const char c : short_payload) cs ^= static_cast<unsigned char>(c);
  char hex[3];
  snprintf(hex, sizeof hex, "%02x", cs);
  const std::string frame = "SWRM1," + short_payload + "*" + hex + "\n";
  CHECK_FALSE(decode_frame(frame, &error).has_value());
  CHECK(error == DecodeError::BadFrame);
}

TEST_CASE("heading on the wire must be unit") {
  const std::string payload = "1,1,0,0,5,5,0,-,-,0";
  unsigned char cs = 0;
  for (const char c : payload) cs ^= static_cast<unsigned char>(c);
  char hex[3];
  snprintf(hex, sizeof hex, "%02x", cs);
  DecodeError error = DecodeError::None;
  CHECK_FALSE(
      decode_frame("SWRM1," + payload + "*" + hex + "\n", &error).has_value());
  CHECK(error == DecodeError::BadFrame);
}
