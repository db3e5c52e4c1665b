#include <doctest.h>

#include <cmath>
#include <limits>

#include "reference.hpp"
#include "risklab/error.hpp"
#include "risklab/prob_space.hpp"

using namespace risklab;

TEST_CASE("expectation on small spaces") {
  CHECK(expectation(ProbSpace({0.5, 0.5}), Position{1, 3}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(expectation(ProbSpace::uniform(7), Position::zeros(7)) == 0.0);
  const Position x{-4, -1, 2, 5};
  CHECK(expectation(ProbSpace::uniform(4), x) == doctest::Approx(ref::expectation({.25, .25, .25, .25}, x.vec())));
  CHECK(expectation(ProbSpace::uniform(4), x) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("dimension mismatch is a configuration error") {
  const ProbSpace s = ProbSpace::uniform(3);
  CHECK_THROWS_AS(expectation(s, Position{1, 2}), ConfigError);
  CHECK_THROWS_AS(ess_bounds(s, Position{1, 2, 3, 4}), ConfigError);
}

TEST_CASE("ProbSpace validation") {
  CHECK_THROWS_AS(ProbSpace({0.5, 0.6}), ConfigError);
  CHECK_THROWS_AS(ProbSpace({1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(ProbSpace({1.2, -0.2}), ConfigError);
  CHECK_THROWS_AS(ProbSpace(std::vector<double>{}), ConfigError);
  // decimal round-off within 1e-12 is accepted and renormalized
  const ProbSpace s({0.1, 0.2, 0.3, 0.4 + 5e-13});
  double total = 0.0;
  for (double p : s.probs()) total += p;
  CHECK(std::abs(total - 1.0) <= 1e-15);
  CHECK_THROWS_AS(ProbSpace({0.1, 0.2, 0.3, 0.4 + 1e-9}), ConfigError);
}

TEST_CASE("Position rejects non-finite payoffs") {
  CHECK_THROWS_AS(Position({1.0, std::numeric_limits<double>::quiet_NaN()}), ConfigError);
  CHECK_THROWS_AS(Position({std::numeric_limits<double>::infinity()}), ConfigError);
}

TEST_CASE("ess_bounds") {
  const ProbSpace s2 = ProbSpace::uniform(2);
  CHECK(ess_bounds(s2, Position{1, 3}) == std::pair{1.0, 3.0});
  CHECK(ess_bounds(s2, Position::constant(2, -2.5)) == std::pair{-2.5, -2.5});
  CHECK(ess_bounds(ProbSpace::uniform(4), Position{-4, -1, 2, 5}) == std::pair{-4.0, 5.0});
}

TEST_CASE("sample_position is a pure function of (seed, index)") {
  const ProbSpace s = ProbSpace::uniform(5);
  SamplerConfig cfg;
  CHECK(sample_position(s, cfg, 0) == sample_position(s, cfg, 0));
  CHECK(sample_position(s, cfg, 17) == sample_position(s, cfg, 17));
  CHECK_FALSE(sample_position(s, cfg, 0) == sample_position(s, cfg, 1));
  // evaluation order does not matter
  std::vector<Position> forward, backward;
  for (std::size_t i = 0; i < 50; ++i) forward.push_back(sample_position(s, cfg, i));
  for (std::size_t i = 50; i-- > 0;) backward.push_back(sample_position(s, cfg, i));
  for (std::size_t i = 0; i < 50; ++i) CHECK(forward[i] == backward[49 - i]);
  SamplerConfig other = cfg;
  other.seed = 43;
  CHECK_FALSE(sample_position(s, cfg, 3) == sample_position(s, other, 3));
  CHECK_FALSE(sample_position(s, cfg, 3) == sample_position(s, cfg, 3, Stream::secondary));
}

TEST_CASE("degenerate sampling range") {
  SamplerConfig cfg;
  cfg.lo = cfg.hi = -1.0;
  CHECK(sample_position(ProbSpace::uniform(3), cfg, 9) == Position::constant(3, -1.0));
  cfg.lo = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("samples stay in range and are centred") {
  const ProbSpace s = ProbSpace::uniform(4);
  SamplerConfig cfg;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < 10000; ++i) {
    const Position x = sample_position(s, cfg, i);
    for (double v : x.values()) {
      CHECK((v >= -5.0 && v <= 5.0));
      sum += v;
      ++count;
    }
  }
  CHECK(std::abs(sum / static_cast<double>(count)) < 0.2);
}

TEST_CASE("expectation is linear") {
  const ProbSpace s({0.1, 0.2, 0.3, 0.4});
  SamplerConfig cfg;
  for (std::size_t i = 0; i < 1000; ++i) {
    const Position x = sample_position(s, cfg, i);
    const Position y = sample_position(s, cfg, i, Stream::secondary);
    CounterRng rng(cfg.seed, 99, i);
    const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    const double lhs = expectation(s, combine(a, x, b, y));
    const double rhs = a * expectation(s, x) + b * expectation(s, y);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("ess_bounds shift exactly with cash") {
  const ProbSpace s = ProbSpace::uniform(6);
  SamplerConfig cfg;
  for (std::size_t i = 0; i < 500; ++i) {
    const Position x = sample_position(s, cfg, i);
    const double c = CounterRng(cfg.seed, 7, i).uniform(-10, 10);
    const auto [lo, hi] = ess_bounds(s, x);
    const auto [lo2, hi2] = ess_bounds(s, x + c);
    CHECK(lo2 == lo + c);
    CHECK(hi2 == hi + c);
  }
}
