#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swarmkit {

// Shortest decimal text that parses back to exactly the same double.
// Used everywhere bytes must be reproducible: wire frames, CSV, JSON extras.
std::string format_double(double value);

// Strict full-string parse; rejects trailing junk and empty input.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

}  // namespace swarmkit
