#include <cmath>

#include "doctest.h"
#include "swarmkit/metrics.hpp"
#include "swarmkit/rng.hpp"

using namespace swarmkit;

namespace {

std::vector<Heading> headings_deg(std::initializer_list<double> degrees) {
  std::vector<Heading> out;
  for (const double d : degrees) out.push_back(Heading::from_angle(d * M_PI / 180.0));
  return out;
}

}  // namespace

TEST_CASE("heading_order: aligned, antiparallel, orthogonal") {
  CHECK(heading_order(std::span<const Heading>{headings_deg({30, 30, 30})}) ==
        doctest::Approx(1.0));
  CHECK(heading_order(std::span<const Heading>{headings_deg({0, 180})}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(heading_order(std::span<const Heading>{headings_deg({0, 90})}) ==
        doctest::Approx(std::sqrt(2.0) / 2));
}

TEST_CASE("heading_order: rotation and permutation invariant") {
  SeededRng rng(1, "order");
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Heading> hs;
    const int n = 2 + static_cast<int>(rng.next_below(10));
    for (int i = 0; i < n; ++i) {
      hs.push_back(Heading::from_angle(rng.uniform(-M_PI, M_PI)));
    }
    const double base = heading_order(std::span<const Heading>{hs});
    const double phi = rng.uniform(-M_PI, M_PI);
    std::vector<Heading> rotated_hs;
    for (const Heading& h : hs) rotated_hs.push_back(h.rotated(phi));
    CHECK(heading_order(std::span<const Heading>{rotated_hs}) ==
          doctest::Approx(base).epsilon(1e-12));
    for (std::size_t k = hs.size(); k > 1; --k) {
      std::swap(hs[k - 1], hs[rng.next_below(k)]);
    }
    CHECK(heading_order(std::span<const Heading>{hs}) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("coverage_area: unit square and degenerate sets") {
  const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(coverage_area(std::span<const Vec2>{square}) == doctest::Approx(1.0));
  const std::vector<Vec2> collinear{{0, 0}, {1, 1}, {2, 2}};
  CHECK(coverage_area(std::span<const Vec2>{collinear}) == 0.0);
  const std::vector<Vec2> pair{{0, 0}, {3, 4}};
  CHECK(coverage_area(std::span<const Vec2>{pair}) == 0.0);
}

TEST_CASE("coverage_area: interior points never change the hull") {
  const std::vector<Vec2> pts{{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 2}, {1, 3}};
  CHECK(coverage_area(std::span<const Vec2>{pts}) == doctest::Approx(16.0));
}

TEST_CASE("coverage_area: 45-agent lattice contracts area by exactly 100x") {
  std::vector<Vec2> spread;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 5; ++j) {
      spread.push_back({50.0 * i, 50.0 * j + (i % 2 ? 25.0 : 0.0)});
    }
  }
  std::vector<Vec2> contracted;
  for (const Vec2& p : spread) contracted.push_back(p / 10.0);
  const double big = coverage_area(std::span<const Vec2>{spread});
  const double small = coverage_area(std::span<const Vec2>{contracted});
  CHECK(big / small == doctest::Approx(100.0).epsilon(0.01));
}

TEST_CASE("coverage_area: translation/rotation invariant, quadratic scaling") {
  SeededRng rng(2, "hull");
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vec2> pts;
    const int n = 3 + static_cast<int>(rng.next_below(20));
    for (int i = 0; i < n; ++i) {
      pts.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10)});
    }
    const double base = coverage_area(std::span<const Vec2>{pts});
    const double phi = rng.uniform(-M_PI, M_PI);
    const Vec2 offset{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const double c = rng.uniform(0.2, 5.0);
    std::vector<Vec2> moved, scaled;
    for (const Vec2& p : pts) {
      moved.push_back(rotated(p, phi) + offset);
      scaled.push_back(p * c);
    }
    CHECK(coverage_area(std::span<const Vec2>{moved}) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(coverage_area(std::span<const Vec2>{scaled}) ==
          doctest::Approx(base * c * c).epsilon(1e-9));
  }
}

TEST_CASE("point_in_hull_interior distinguishes inside from boundary/outside") {
  const std::vector<Vec2> square{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  const auto hull = convex_hull(square);
  CHECK(point_in_hull_interior({2, 2}, hull));
  CHECK_FALSE(point_in_hull_interior({0, 2}, hull));   // on edge
  CHECK_FALSE(point_in_hull_interior({5, 2}, hull));   // outside
}

TEST_CASE("time_to_event: immediate, never, ordering") {
  RunResult run;
  for (Tick t = 0; t < 10; ++t) {
    StepRecord r;
    r.tick = t;
    run.records.push_back(r);
  }
  CHECK(time_to_event(run, [](const StepRecord&) { return true; }) == 0);
  CHECK_FALSE(
      time_to_event(run, [](const StepRecord&) { return false; }).has_value());
  const auto at_five =
      time_to_event(run, [](const StepRecord& r) { return r.tick >= 5; });
  CHECK(at_five == 5);
}

TEST_CASE("comm_stats: loss off gives 1.0 in every populated bin") {
  RunResult run;
  for (Tick t = 0; t < 120; ++t) {
    StepRecord r;
    r.tick = t;
    r.pair_outcomes.push_back({0, 1, 15.0, true});
    r.pair_outcomes.push_back({1, 0, 15.0, true});
    run.records.push_back(r);
  }
  const auto bins = comm_stats(run);
  REQUIRE(bins.size() == 1);
  CHECK(bins[0].lo == 10.0);
  CHECK(bins[0].ratio() == 1.0);
  CHECK_FALSE(bins[0].insufficient);
}

TEST_CASE("comm_stats: sparse bins get the insufficient flag") {
  RunResult run;
  StepRecord r;
  r.tick = 0;
  r.pair_outcomes.push_back({0, 1, 35.0, true});
  r.pair_outcomes.push_back({0, 1, 35.0, false});
  r.pair_outcomes.push_back({0, 1, 35.0, true});
  run.records.push_back(r);
  const auto bins = comm_stats(run);
  REQUIRE(bins.size() == 1);
  CHECK(bins[0].trials == 3);
  CHECK(bins[0].insufficient);
  CHECK(bins[0].ratio() == doctest::Approx(2.0 / 3.0));
}
