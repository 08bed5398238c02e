#pragma once

#include <cstdint>
#include <string_view>

namespace swarmkit {

// Deterministic pseudo-random stream keyed by (seed, stream label).
// Identical pairs yield identical sequences across runs and platforms; the
// engine is splitmix64, so draws are plain integer arithmetic with no
// implementation-defined distribution code. One stream per consumer, never
// shared between threads.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 bits of mantissa.
  double next_double();

  double uniform(double lo, double hi);

  // True with probability p.
  bool bernoulli(double p);

  // Standard normal via Box-Muller; pairs are cached.
  double normal(double mean, double sigma);

  // Uniform integer in [0, bound), bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace swarmkit
