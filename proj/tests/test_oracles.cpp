#include <doctest.h>

#include <cmath>

#include "reference.hpp"
#include "risklab/error.hpp"
#include "risklab/oracles.hpp"

using namespace risklab;

namespace {

const ProbSpace kU4 = ProbSpace::uniform(4);

}  // namespace

TEST_CASE("grid_induced agrees with bisection to within a pitch") {
  SamplerConfig cfg;
  const std::vector<AcceptanceSet> sets{
      from_measure(RiskFunctional::value_at_risk(kU4, 0.25)),
      from_measure(floor_compose(RiskFunctional::neg_expectation(kU4))),
      hull_of_orthants(kU4, Position{1, 0, 2, -1}, Position{-1, 1, 0, 0}),
  };
  const double pitch = 1e-4;
  for (const auto& a : sets) {
    CAPTURE(a.describe());
    for (std::size_t i = 0; i < 40; ++i) {
      const Position x = sample_position(kU4, cfg, i);
      const double g = oracles::grid_induced(a, x, -12.0, 12.0, pitch);
      const InducedValue v = induced_measure(a, x);
      REQUIRE(v.finite());
      CHECK(g >= v.value - 1e-9);
      CHECK(g - v.value <= pitch + 1e-9);
    }
  }
  CHECK_THROWS_AS(oracles::grid_induced(orthant_at(kU4, Position::constant(4, 100)), Position::zeros(4), -1, 1, 0.5),
                  ConfigError);
}

TEST_CASE("ternary hull value matches the breakpoint formula") {
  SamplerConfig cfg;
  for (std::size_t i = 0; i < 500; ++i) {
    const ProbSpace s = ProbSpace::uniform(2 + i % 3);
    const Position z = sample_position(s, cfg, i, Stream::member);
    const Position y = sample_position(s, cfg, i, Stream::family);
    const Position x = sample_position(s, cfg, i);
    CHECK(std::abs(oracles::hull_value_ternary(z, y, x) - hull_induced_value(z, y, x)) <= 1e-6);
  }
}

TEST_CASE("hull_member_brute at simple points") {
  const Position z{2, 0}, y{0, 2};
  CHECK(oracles::hull_member_brute(z, y, Position{1, 1}, 0.01));
  CHECK(oracles::hull_member_brute(z, y, Position{2, 0}, 0.01));
  CHECK_FALSE(oracles::hull_member_brute(z, y, Position{0.9, 0.9}, 0.01));
}

TEST_CASE("lattice search") {
  const auto var = RiskFunctional::value_at_risk(kU4, 0.25);
  const auto w = oracles::lattice_counterexample(var, Property::convexity);
  REQUIRE(w);
  auto fn = [&](const std::vector<double>& v) { return var(Position(v)); };
  CHECK(ref::margin(fn, Property::convexity, *w) > kDefaultPropertyTol);

  CHECK_FALSE(oracles::lattice_counterexample(RiskFunctional::expected_shortfall(kU4, 0.5), Property::convexity));
  CHECK_FALSE(oracles::lattice_counterexample(RiskFunctional::neg_expectation(kU4), Property::monotonicity));
  CHECK_FALSE(oracles::lattice_counterexample(RiskFunctional::worst_case(kU4), Property::star_shapedness));

  const auto ent = RiskFunctional::entropic(kU4, 1.0);
  const auto ph = oracles::lattice_counterexample(ent, Property::positive_homogeneity);
  REQUIRE(ph);
  auto efn = [&](const std::vector<double>& v) { return ent(Position(v)); };
  CHECK(ref::margin(efn, Property::positive_homogeneity, *ph) > kDefaultPropertyTol);
}

TEST_CASE("lattice witnesses stay on the lattice") {
  const auto var = RiskFunctional::value_at_risk(ProbSpace::uniform(3), 0.4);
  const auto w = oracles::lattice_counterexample(var, Property::convexity, {-2, 2, 0.5});
  REQUIRE(w);
  for (const auto& x : w->positions) {
    for (double v : x.values()) {
      CHECK((v >= -2 && v <= 2));
      CHECK(v * 2 == std::round(v * 2));
    }
  }
}
