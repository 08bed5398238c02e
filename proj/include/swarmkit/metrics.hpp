#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmkit/engine.hpp"

namespace swarmkit {

struct MetricSeries {
  std::string name;
  std::vector<std::pair<Tick, double>> samples;  // ticks strictly increasing
};

// |sum of heading unit vectors| / N, in [0,1]. 1 = perfect alignment.
double heading_order(std::span<const AgentState> states);
double heading_order(std::span<const Heading> headings);

// Convex hull area of the positions, m^2; degenerate sets give 0.
double coverage_area(std::span<const AgentState> states);
double coverage_area(std::span<const Vec2> positions);

std::vector<Vec2> convex_hull(std::span<const Vec2> points);
bool point_in_hull_interior(Vec2 p, std::span<const Vec2> hull);

double min_pairwise_distance(std::span<const Vec2> positions);

// First tick whose record satisfies the predicate; nullopt when none does.
std::optional<Tick> time_to_event(
    const RunResult& run, const std::function<bool(const StepRecord&)>& pred);

// Pairwise delivery outcomes bucketed by sender-receiver distance.
struct CommBin {
  double lo = 0.0, hi = 0.0;  // [lo, hi) metres
  long trials = 0;
  long delivered = 0;
  bool insufficient = false;  // fewer than 100 trials

  double ratio() const { return trials ? double(delivered) / trials : 0.0; }
};

// Requires verbose per-pair logging; bin_width matches the loss table's 10 m
// granularity by default.
std::vector<CommBin> comm_stats(const RunResult& run, double bin_width = 10.0);

}  // namespace swarmkit
