#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace swarmkit::cli {

// Exit codes shared by the tool and the library entry points.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kIoError = 3;

struct RunOptions {
  std::filesystem::path scenario_path;
  std::vector<std::string> overrides;  // "key=value"
  std::filesystem::path out_dir = ".";
  bool verbose_net = false;
  std::optional<std::uint64_t> env_seed;  // SWARMKIT_SEED, if set
};

// Loads, runs, and writes trajectory.csv, metrics.csv, summary.json.
// Deterministic: identical inputs reproduce identical bytes.
int run_command(const RunOptions& options, std::string* error = nullptr);

struct SweepOptions {
  std::filesystem::path scenario_path;
  std::vector<int> agent_counts;
  int seeds = 10;
  std::filesystem::path out_dir = ".";
  int workers = 1;
  std::optional<std::uint64_t> env_seed;
};

// Cross product of (n, seed) runs; writes sweep.csv with per-run find/reach
// times plus per-n aggregates. Individual failures are recorded, not fatal.
int sweep_command(const SweepOptions& options, std::string* error = nullptr);

}  // namespace swarmkit::cli
