#include <doctest.h>

#include <cmath>

#include "reference.hpp"
#include "risklab/axioms.hpp"
#include "risklab/oracles.hpp"

using namespace risklab;

namespace {

const ProbSpace kU4 = ProbSpace::uniform(4);
const ProbSpace kSkew({0.1, 0.2, 0.3, 0.4});

auto ref_fn(const RiskFunctional& m) {
  return [m](const std::vector<double>& v) { return m(Position(v)); };
}

}  // namespace

TEST_CASE("ES is convex on 10^4 samples") {
  SamplerConfig cfg;
  const PropertyReport r = check(RiskFunctional::expected_shortfall(kU4, 0.5), Property::convexity, cfg);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.samples == 10000);
  CHECK(r.seed == 42);
  CHECK(r.tol == kDefaultPropertyTol);
}

TEST_CASE("VaR convexity witness from the lattice search") {
  const auto var = RiskFunctional::value_at_risk(kU4, 0.25);
  const auto w = oracles::lattice_counterexample(var, Property::convexity, {-3, 3, 1});
  REQUIRE(w);
  const double m = ref::margin(ref_fn(var), Property::convexity, *w);
  CHECK(m > kDefaultPropertyTol);
  CHECK(m == doctest::Approx(w->margin));
  for (const auto& x : w->positions) {
    for (double v : x.values()) CHECK((v >= -3 && v <= 3 && v == std::round(v)));
  }
}

TEST_CASE("translated neg_expectation is not star-shaped") {
  const auto m = translate(RiskFunctional::neg_expectation(kU4), 1.0);
  SamplerConfig cfg;
  const PropertyReport r = check(m, Property::star_shapedness, cfg);
  REQUIRE(r.verdict == Verdict::fail);
  REQUIRE(r.witness);
  // the shrunk witness is simple and its margin is (rho(0) + ...) exact
  CHECK(r.witness->margin == doctest::Approx(ref::margin(ref_fn(m), Property::star_shapedness, *r.witness)));
  CHECK(r.witness->margin > kDefaultPropertyTol);
  const Witness constant_one{{Position::constant(4, 1.0)}, {2.0}, 0.0};
  CHECK(violation_margin(m, Property::star_shapedness, constant_one) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("full audit of the catalog") {
  SamplerConfig cfg;
  cfg.count = 3000;
  const auto sm = RiskFunctional::scenario_max(kSkew, {{0.1, 0.2, 0.3, 0.4}, {0.4, 0.3, 0.2, 0.1}});
  const AuditResult a = full_audit(sm, cfg);
  for (const auto& r : a.reports) CHECK(r.verdict == Verdict::pass);
  CHECK(a.classification.coherent);
  CHECK(a.classification.star_shaped);

  const AuditResult e = full_audit(RiskFunctional::entropic(kSkew, 1.0), cfg);
  CHECK(e.at(Property::positive_homogeneity).verdict == Verdict::fail);
  CHECK(e.at(Property::star_shapedness).verdict == Verdict::pass);
  CHECK(e.classification.convex);
  CHECK_FALSE(e.classification.coherent);
  REQUIRE(e.at(Property::positive_homogeneity).witness);
  const Witness& w = *e.at(Property::positive_homogeneity).witness;
  CHECK(ref::margin(ref_fn(RiskFunctional::entropic(kSkew, 1.0)), Property::positive_homogeneity, w) >
        kDefaultPropertyTol);
}

TEST_CASE("floor composition fails cash invariance with a half-unit shift") {
  const auto fl = floor_compose(RiskFunctional::neg_expectation(kU4));
  SamplerConfig cfg;
  cfg.count = 1000;
  const AuditResult a = full_audit(fl, cfg);
  CHECK(a.at(Property::monotonicity).verdict == Verdict::pass);
  const PropertyReport& r = a.at(Property::cash_invariance);
  REQUIRE(r.verdict == Verdict::fail);
  const Witness& w = *r.witness;
  CHECK(std::abs(w.scalars[0]) == 0.5);
  for (double v : w.positions[0].values()) CHECK(v == std::round(v));
  CHECK(ref::margin(ref_fn(fl), Property::cash_invariance, w) == doctest::Approx(0.5));
  CHECK_FALSE(a.classification.monetary);
}

TEST_CASE("star-shapedness forces rho(0) <= 0") {
  const auto var = RiskFunctional::value_at_risk(kU4, 0.25);
  CHECK(star_implies_zero_check(var).verdict == Verdict::pass);
  const PropertyReport up = star_implies_zero_check(translate(var, 0.2));
  REQUIRE(up.verdict == Verdict::fail);
  CHECK(up.witness->positions[0] == Position::zeros(4));
  CHECK(up.witness->scalars[0] == 2.0);
  CHECK(up.witness->margin == doctest::Approx(0.2));
  CHECK(star_implies_zero_check(translate(var, -0.2)).verdict == Verdict::pass);
}

TEST_CASE("every failing witness re-verifies independently") {
  SamplerConfig cfg;
  cfg.count = 2000;
  const std::vector<RiskFunctional> ms{
      RiskFunctional::value_at_risk(kSkew, 0.25),
      RiskFunctional::entropic(kSkew, 1.5),
      floor_compose(RiskFunctional::worst_case(kSkew)),
      translate(RiskFunctional::expected_shortfall(kSkew, 0.4), 0.7),
      translate(RiskFunctional::entropic(kSkew, 1.0), -0.3),
  };
  for (const auto& m : ms) {
    const AuditResult a = full_audit(m, cfg);
    for (const auto& r : a.reports) {
      CAPTURE(m.label());
      CAPTURE(to_string(r.property));
      if (r.verdict == Verdict::fail) {
        REQUIRE(r.witness);
        CHECK(ref::margin(ref_fn(m), r.property, *r.witness) > r.tol);
      } else {
        CHECK(r.verdict == Verdict::pass);
        CHECK(r.samples > 0);
      }
    }
    // homogeneity includes lambda = 0, so it implies normalization
    if (a.at(Property::positive_homogeneity).verdict == Verdict::pass) {
      CHECK(a.at(Property::normalization).verdict == Verdict::pass);
    }
  }
}

TEST_CASE("audits are deterministic in (seed, count, tol)") {
  SamplerConfig cfg;
  cfg.count = 500;
  const auto m = RiskFunctional::value_at_risk(kSkew, 0.3);
  const PropertyReport a = check(m, Property::convexity, cfg);
  const PropertyReport b = check(m, Property::convexity, cfg);
  REQUIRE(a.verdict == b.verdict);
  if (a.witness) {
    CHECK(a.witness->positions == b.witness->positions);
    CHECK(a.witness->scalars == b.witness->scalars);
    CHECK(a.witness->margin == b.witness->margin);
  }
}

TEST_CASE("shrinking keeps the violation") {
  const auto m = RiskFunctional::value_at_risk(kU4, 0.25);
  Witness w{{Position{0.37, -2.91, 1.13, 4.02}, Position{-1.7, 0.2, 3.3, -3.9}}, {0.5}, 0.0};
  if (violation_margin(m, Property::convexity, w) > kDefaultPropertyTol) {
    const Witness s = shrink_witness(m, Property::convexity, w, kDefaultPropertyTol);
    CHECK(violation_margin(m, Property::convexity, s) > kDefaultPropertyTol);
  }
  // translate(ne, 1) with X = (0.3, ...) shrinks to X = 0
  const auto t = translate(RiskFunctional::neg_expectation(kU4), 1.0);
  const Witness s = shrink_witness(t, Property::star_shapedness,
                                   {{Position{0.3, -1.2, 2.2, 0.7}}, {3.7}, 0.0}, kDefaultPropertyTol);
  CHECK(s.positions[0] == Position::zeros(4));
  CHECK(violation_margin(t, Property::star_shapedness, s) > kDefaultPropertyTol);
}
