#include "swarmkit/codec.hpp"

#include <array>

#include "swarmkit/text.hpp"

namespace swarmkit {
namespace {

constexpr std::string_view kSentinel = "SWRM1,";

unsigned char xor_bytes(std::string_view payload) {
  unsigned char cs = 0;
  for (const char c : payload) cs ^= static_cast<unsigned char>(c);
  return cs;
}

std::string checksum_hex(std::string_view payload) {
  static constexpr char digits[] = "0123456789abcdef";
  const unsigned char cs = xor_bytes(payload);
  return {digits[cs >> 4], digits[cs & 0xF]};
}

std::optional<AgentState> fail(DecodeError* error, DecodeError code) {
  if (error) *error = code;
  return std::nullopt;
}

}  // namespace

std::string encode_frame(const AgentState& state) {
  std::string payload;
  payload.reserve(96);
  payload += std::to_string(state.id);
  payload += ',';
  payload += std::to_string(state.tick);
  payload += ',';
  payload += format_double(state.position.x);
  payload += ',';
  payload += format_double(state.position.y);
  payload += ',';
  payload += format_double(state.heading.x());
  payload += ',';
  payload += format_double(state.heading.y());
  payload += ',';
  payload += format_double(state.speed);
  payload += ',';
  if (state.target_found) {
    payload += format_double(state.target_found->x);
    payload += ',';
    payload += format_double(state.target_found->y);
  } else {
    payload += "-,-";
  }
  payload += ',';
  payload += std::to_string(static_cast<int>(state.role_flags));

  std::string frame;
  frame.reserve(kSentinel.size() + payload.size() + 4);
  frame += kSentinel;
  frame += payload;
  frame += '*';
  frame += checksum_hex(payload);
  frame += '\n';
  return frame;
}

std::optional<AgentState> decode_frame(std::string_view frame,
                                       DecodeError* error) {
  if (error) *error = DecodeError::None;
  if (frame.size() < kSentinel.size() + 4 ||
      frame.substr(0, kSentinel.size()) != kSentinel) {
    return fail(error, DecodeError::BadFrame);
  }
  const std::size_t star = frame.find('*');
  if (star == std::string_view::npos) return fail(error, DecodeError::BadFrame);
  // Exactly two hex digits and the terminator after '*'.
  if (frame.size() != star + 4 || frame.back() != '\n') {
    return fail(error, DecodeError::BadFrame);
  }
  const std::string_view cs_text = frame.substr(star + 1, 2);
  const auto hex_val = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return 10 + (c - 'a');
    return -1;
  };
  const int hi = hex_val(cs_text[0]);
  const int lo = hex_val(cs_text[1]);
  if (hi < 0 || lo < 0) return fail(error, DecodeError::BadFrame);

  const std::string_view payload =
      frame.substr(kSentinel.size(), star - kSentinel.size());
  if (xor_bytes(payload) != static_cast<unsigned char>((hi << 4) | lo)) {
    return fail(error, DecodeError::BadChecksum);
  }

  const auto fields = split(payload, ',');
  if (fields.size() != 10) return fail(error, DecodeError::BadFrame);

  const auto id = parse_integer(fields[0]);
  const auto tick = parse_integer(fields[1]);
  const auto x = parse_double(fields[2]);
  const auto y = parse_double(fields[3]);
  const auto hx = parse_double(fields[4]);
  const auto hy = parse_double(fields[5]);
  const auto speed = parse_double(fields[6]);
  const auto flags = parse_integer(fields[9]);
  if (!id || *id < 0 || !tick || !x || !y || !hx || !hy || !speed ||
      *speed < 0.0 || !flags || *flags < 0 || *flags > 3) {
    return fail(error, DecodeError::BadFrame);
  }
  const auto heading = Heading::from_unit_components(*hx, *hy);
  if (!heading) return fail(error, DecodeError::BadFrame);

  AgentState state;
  state.id = static_cast<AgentId>(*id);
  state.tick = *tick;
  state.position = {*x, *y};
  if (!state.position.finite()) return fail(error, DecodeError::BadFrame);
  state.heading = *heading;
  state.speed = *speed;
  state.role_flags = static_cast<std::uint8_t>(*flags);

  const bool tfx_blank = fields[7] == "-";
  const bool tfy_blank = fields[8] == "-";
  if (tfx_blank != tfy_blank) return fail(error, DecodeError::BadFrame);
  if (!tfx_blank) {
    const auto tfx = parse_double(fields[7]);
    const auto tfy = parse_double(fields[8]);
    if (!tfx || !tfy) return fail(error, DecodeError::BadFrame);
    state.target_found = Vec2{*tfx, *tfy};
    if (!state.target_found->finite()) return fail(error, DecodeError::BadFrame);
  }
  return state;
}

}  // namespace swarmkit
