#include <cmath>
#include <set>

#include "doctest.h"
#include "swarmkit/geometry.hpp"
#include "swarmkit/rng.hpp"

using namespace swarmkit;

TEST_CASE("normalize: 3-4-5 triangle") {
  const Heading h = normalize({3.0, 4.0});
  CHECK(h.x() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(h.y() == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("normalize: axis case") {
  const Heading h = normalize({0.0, -2.0});
  CHECK(h.x() == 0.0);
  CHECK(h.y() == -1.0);
}

TEST_CASE("normalize: below threshold throws ZeroVector") {
  CHECK_THROWS_AS(normalize({1e-13, 0.0}), ZeroVectorError);
  CHECK_FALSE(try_normalize({1e-13, 0.0}).has_value());
  CHECK(try_normalize({1e-11, 0.0}).has_value());
}

TEST_CASE("headings built through the API are unit within 1e-9") {
  SeededRng rng(7, "headings");
  for (int i = 0; i < 1000; ++i) {
    const Vec2 v{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    if (v.norm() <= kZeroVectorThreshold) continue;
    CHECK(std::abs(normalize(v).vec().norm() - 1.0) < 1e-9);
    const Heading a = Heading::from_angle(rng.uniform(-10.0, 10.0));
    CHECK(std::abs(a.vec().norm() - 1.0) < 1e-9);
    CHECK(std::abs(a.rotated(rng.uniform(-3.0, 3.0)).vec().norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("heading angle round trip and angle_to") {
  const Heading east = Heading::from_angle(0.0);
  const Heading north = Heading::from_angle(M_PI / 2);
  CHECK(east.angle_to(north) == doctest::Approx(M_PI / 2));
  CHECK(north.angle_to(east) == doctest::Approx(-M_PI / 2));
}

TEST_CASE("seeded_rng: identical (seed, stream) pairs repeat exactly") {
  SeededRng a(42, "net");
  SeededRng b(42, "net");
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("seeded_rng: stream and seed separation") {
  SeededRng net(42, "net");
  SeededRng init(42, "init");
  SeededRng other(43, "net");
  int equal_stream = 0, equal_seed = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = net.next_u64();
    if (x == init.next_u64()) ++equal_stream;
    if (x == other.next_u64()) ++equal_seed;
  }
  CHECK(equal_stream == 0);
  CHECK(equal_seed == 0);
}

TEST_CASE("seeded_rng: uniform stays in range, bernoulli respects edges") {
  SeededRng rng(1, "u");
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  SeededRng coin(1, "coin");
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(coin.bernoulli(0.0));
    CHECK(coin.bernoulli(1.0));
  }
}

TEST_CASE("segment_hit finds the crossing parameter") {
  const Segment wall{{1.0, -1.0}, {1.0, 1.0}};
  const auto t = segment_hit({0.0, 0.0}, {2.0, 0.0}, wall);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(0.5));
  CHECK_FALSE(segment_hit({0.0, 0.0}, {0.5, 0.0}, wall).has_value());
  CHECK_FALSE(segment_hit({0.0, 2.0}, {2.0, 0.0}, wall).has_value());
}
