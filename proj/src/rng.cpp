#include "swarmkit/rng.hpp"

#include <cmath>

namespace swarmkit {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::string_view stream)
    : state_(mix64(mix64(seed + kGamma) ^ fnv1a64(stream))) {}

std::uint64_t SeededRng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double SeededRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

bool SeededRng::bernoulli(double p) { return next_double() < p; }

double SeededRng::normal(double mean, double sigma) {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return mean + sigma * cached_normal_;
  }
  // Box-Muller on (0,1] uniforms; avoids log(0).
  const double u1 = 1.0 - next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return mean + sigma * r * std::cos(a);
}

std::uint64_t SeededRng::next_below(std::uint64_t bound) {
  // Rejection sampling keeps the distribution exact.
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

}  // namespace swarmkit
