#include "swarmkit/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace swarmkit {

double heading_order(std::span<const Heading> headings) {
  if (headings.empty()) return 0.0;
  Vec2 sum{0.0, 0.0};
  for (const Heading& h : headings) sum += h.vec();
  return sum.norm() / static_cast<double>(headings.size());
}

double heading_order(std::span<const AgentState> states) {
  std::vector<Heading> headings;
  headings.reserve(states.size());
  for (const AgentState& s : states) headings.push_back(s.heading);
  return heading_order(std::span<const Heading>{headings});
}

// Andrew monotone chain, counter-clockwise, collinear points dropped.
std::vector<Vec2> convex_hull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  const auto ccw = [](Vec2 o, Vec2 a, Vec2 b) {
    return (a - o).cross(b - o) > 0.0;
  };
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && !ccw(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && !ccw(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double coverage_area(std::span<const Vec2> positions) {
  const std::vector<Vec2> hull = convex_hull(positions);
  if (hull.size() < 3) return 0.0;
  double twice_area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2 a = hull[i];
    const Vec2 b = hull[(i + 1) % hull.size()];
    twice_area += a.cross(b);
  }
  return std::abs(twice_area) / 2.0;
}

double coverage_area(std::span<const AgentState> states) {
  std::vector<Vec2> positions;
  positions.reserve(states.size());
  for (const AgentState& s : states) positions.push_back(s.position);
  return coverage_area(std::span<const Vec2>{positions});
}

bool point_in_hull_interior(Vec2 p, std::span<const Vec2> hull) {
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2 a = hull[i];
    const Vec2 b = hull[(i + 1) % hull.size()];
    if ((b - a).cross(p - a) <= 0.0) return false;  // on or outside an edge
  }
  return true;
}

double min_pairwise_distance(std::span<const Vec2> positions) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      best = std::min(best, distance(positions[i], positions[j]));
    }
  }
  return best;
}

std::optional<Tick> time_to_event(
    const RunResult& run, const std::function<bool(const StepRecord&)>& pred) {
  for (const StepRecord& record : run.records) {
    if (pred(record)) return record.tick;
  }
  return std::nullopt;
}

std::vector<CommBin> comm_stats(const RunResult& run, double bin_width) {
  std::vector<CommBin> bins;
  const auto bin_for = [&](double dist) -> CommBin& {
    const std::size_t index = static_cast<std::size_t>(dist / bin_width);
    if (bins.size() <= index) {
      const std::size_t old = bins.size();
      bins.resize(index + 1);
      for (std::size_t i = old; i < bins.size(); ++i) {
        bins[i].lo = i * bin_width;
        bins[i].hi = (i + 1) * bin_width;
      }
    }
    return bins[index];
  };
  for (const StepRecord& record : run.records) {
    for (const auto& pair : record.pair_outcomes) {
      CommBin& bin = bin_for(pair.distance);
      ++bin.trials;
      if (pair.delivered) ++bin.delivered;
    }
  }
  for (CommBin& bin : bins) bin.insufficient = bin.trials < 100;
  std::erase_if(bins, [](const CommBin& b) { return b.trials == 0; });
  return bins;
}

}  // namespace swarmkit
