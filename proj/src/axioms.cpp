#include "risklab/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "risklab/error.hpp"

namespace risklab {

namespace {

constexpr std::size_t kRandomWeights = 4;
constexpr int kShrinkRounds = 4;

std::vector<double> scalings_for(Property property, const SamplerConfig& sampler) {
  if (!sampler.lambdas.empty()) return sampler.lambdas;
  return property == Property::star_shapedness ? default_star_scalings()
                                               : default_homogeneity_scalings();
}

std::vector<double> scalar_candidates(Property property, double current) {
  switch (property) {
    case Property::cash_invariance:
      return {1.0, -1.0, 0.5, -0.5, std::round(2.0 * current) / 2.0, std::round(current)};
    case Property::convexity:
      return {0.5, 0.25, 0.75};
    case Property::positive_homogeneity:
      return {0.0, 2.0, 4.0, 0.5, 16.0};
    case Property::star_shapedness:
      if (current < 1.0) return {0.5, 0.25, 0.75};
      return {2.0, 4.0, 16.0, 1.5};
    default:
      return {};
  }
}

bool witness_shape_ok(Property property, const Witness& w) {
  if (property == Property::monotonicity) return dominates(w.positions[1], w.positions[0]);
  return true;
}

PropertyReport make_report(Property property, const SamplerConfig& sampler, double tol) {
  PropertyReport report;
  report.property = property;
  report.tol = tol;
  report.seed = sampler.seed;
  return report;
}

}  // namespace

std::string_view to_string(Property p) {
  switch (p) {
    case Property::monotonicity: return "monotonicity";
    case Property::cash_invariance: return "cash_invariance";
    case Property::normalization: return "normalization";
    case Property::convexity: return "convexity";
    case Property::positive_homogeneity: return "positive_homogeneity";
    case Property::star_shapedness: return "star_shapedness";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::optional<Property> property_from_string(std::string_view name) {
  for (Property p : kAllProperties) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::vector<double> default_convex_weights() { return {0.25, 0.5, 0.75}; }
std::vector<double> default_star_scalings() { return {1.0 + 1.0 / 16.0, 1.5, 2.0, 4.0, 16.0}; }
std::vector<double> default_homogeneity_scalings() {
  return {0.0, 0.5, 1.0 + 1.0 / 16.0, 1.5, 2.0, 4.0, 16.0};
}

double violation_margin(const RiskFunctional& m, Property property, const Witness& w) {
  auto need = [&](std::size_t positions, std::size_t scalars) {
    if (w.positions.size() < positions || w.scalars.size() < scalars) {
      throw ConfigError("witness for " + std::string(to_string(property)) + " is incomplete");
    }
  };
  switch (property) {
    case Property::monotonicity: {
      need(2, 0);
      const Position& x = w.positions[0];
      const Position& y = w.positions[1];
      if (!dominates(y, x)) throw ConfigError("monotonicity witness requires Y >= X");
      return m(y) - m(x);
    }
    case Property::cash_invariance: {
      need(1, 1);
      const Position& x = w.positions[0];
      const double c = w.scalars[0];
      return std::abs(m(x + c) - (m(x) - c));
    }
    case Property::normalization:
      return std::abs(m(Position::zeros(m.space().size())));
    case Property::convexity: {
      need(2, 1);
      const double t = w.scalars[0];
      const Position& x = w.positions[0];
      const Position& y = w.positions[1];
      return m(combine(t, x, 1.0 - t, y)) - (t * m(x) + (1.0 - t) * m(y));
    }
    case Property::positive_homogeneity: {
      need(1, 1);
      const double s = w.scalars[0];
      return std::abs(m(s * w.positions[0]) - s * m(w.positions[0]));
    }
    case Property::star_shapedness: {
      need(1, 1);
      const double s = w.scalars[0];
      const Position& x = w.positions[0];
      if (s >= 1.0) return s * m(x) - m(s * x);
      return m(s * x) - s * m(x);
    }
  }
  return 0.0;
}

Witness shrink_witness(const RiskFunctional& m, Property property, Witness w, double tol) {
  auto still_fails = [&](const Witness& candidate) {
    return witness_shape_ok(property, candidate) && violation_margin(m, property, candidate) > tol;
  };
  for (int round = 0; round < kShrinkRounds; ++round) {
    bool changed = false;
    for (std::size_t p = 0; p < w.positions.size(); ++p) {
      for (std::size_t i = 0; i < w.positions[p].size(); ++i) {
        const double current = w.positions[p][i];
        for (double candidate : {0.0, std::round(current), std::round(2.0 * current) / 2.0}) {
          if (candidate == current) break;
          Witness trial = w;
          std::vector<double> values = trial.positions[p].vec();
          values[i] = candidate;
          trial.positions[p] = Position(std::move(values));
          if (still_fails(trial)) {
            w = std::move(trial);
            changed = true;
            break;
          }
        }
      }
    }
    for (std::size_t s = 0; s < w.scalars.size(); ++s) {
      const double current = w.scalars[s];
      for (double candidate : scalar_candidates(property, current)) {
        if (candidate == current) break;
        Witness trial = w;
        trial.scalars[s] = candidate;
        if (still_fails(trial)) {
          w = std::move(trial);
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }
  w.margin = violation_margin(m, property, w);
  return w;
}

PropertyReport check(const RiskFunctional& m, Property property, const SamplerConfig& sampler,
                     double tol) {
  if (!(tol > 0.0)) throw ConfigError("property tolerance must be positive");
  sampler.validate();
  PropertyReport report = make_report(property, sampler, tol);
  const ProbSpace& space = m.space();
  const std::size_t n = space.size();

  auto fail_with = [&](Witness w, std::size_t samples) {
    report.verdict = Verdict::fail;
    report.samples = samples;
    report.witness = shrink_witness(m, property, std::move(w), tol);
    return report;
  };

  if (property == Property::normalization) {
    Witness w{{Position::zeros(n)}, {}, 0.0};
    w.margin = violation_margin(m, property, w);
    if (w.margin > tol) return fail_with(std::move(w), 1);
    report.verdict = Verdict::pass;
    report.samples = 1;
    return report;
  }

  const std::vector<double> weights =
      sampler.weights.empty() ? default_convex_weights() : sampler.weights;
  const std::vector<double> scalings = scalings_for(property, sampler);
  const double noise_width = sampler.hi > sampler.lo ? 0.5 * (sampler.hi - sampler.lo) : 1.0;

  for (std::size_t i = 0; i < sampler.count; ++i) {
    const Position x = sample_position(space, sampler, i, Stream::primary);
    CounterRng rng(sampler.seed, static_cast<std::uint64_t>(Stream::scalar), i);
    std::vector<Witness> trials;
    switch (property) {
      case Property::monotonicity: {
        CounterRng noise(sampler.seed, static_cast<std::uint64_t>(Stream::noise), i);
        std::vector<double> up(n);
        for (std::size_t k = 0; k < n; ++k) up[k] = x[k] + noise.uniform(0.0, noise_width);
        trials.push_back({{x, Position(std::move(up))}, {}, 0.0});
        break;
      }
      case Property::cash_invariance:
        trials.push_back({{x}, {rng.uniform(sampler.lo, sampler.hi)}, 0.0});
        trials.push_back({{x}, {rng.uniform(-1.0, 1.0)}, 0.0});
        break;
      case Property::convexity: {
        const Position y = sample_position(space, sampler, i, Stream::secondary);
        for (double t : weights) trials.push_back({{x, y}, {t}, 0.0});
        for (std::size_t k = 0; k < kRandomWeights; ++k) {
          trials.push_back({{x, y}, {rng.uniform()}, 0.0});
        }
        break;
      }
      case Property::positive_homogeneity:
      case Property::star_shapedness:
        for (double s : scalings) trials.push_back({{x}, {s}, 0.0});
        break;
      case Property::normalization:
        break;
    }
    for (Witness& w : trials) {
      w.margin = violation_margin(m, property, w);
      if (w.margin > tol) return fail_with(std::move(w), i + 1);
    }
  }
  report.verdict = Verdict::pass;
  report.samples = sampler.count;
  return report;
}

const PropertyReport& AuditResult::at(Property p) const {
  for (const auto& r : reports) {
    if (r.property == p) return r;
  }
  throw ConfigError("audit has no report for " + std::string(to_string(p)));
}

Classification classify(const std::vector<PropertyReport>& reports) {
  auto passed = [&](Property p) {
    return std::any_of(reports.begin(), reports.end(), [p](const PropertyReport& r) {
      return r.property == p && r.verdict == Verdict::pass;
    });
  };
  Classification c;
  c.monetary = passed(Property::monotonicity) && passed(Property::cash_invariance);
  c.convex = c.monetary && passed(Property::convexity);
  c.coherent = c.convex && passed(Property::positive_homogeneity);
  c.star_shaped = c.monetary && passed(Property::star_shapedness);
  c.normalized = passed(Property::normalization);
  return c;
}

AuditResult full_audit(const RiskFunctional& m, const SamplerConfig& sampler, double tol) {
  AuditResult result;
  for (Property p : kAllProperties) result.reports.push_back(check(m, p, sampler, tol));
  result.classification = classify(result.reports);
  return result;
}

PropertyReport star_implies_zero_check(const RiskFunctional& m, double tol) {
  PropertyReport report;
  report.property = Property::star_shapedness;
  report.tol = tol;
  report.samples = 1;
  const Position zero = Position::zeros(m.space().size());
  const double at_zero = m(zero);
  std::ostringstream note;
  note.precision(17);
  note << "rho(0) = " << at_zero;
  report.note = note.str();
  if (at_zero > tol) {
    Witness w{{zero}, {2.0}, 0.0};
    w.margin = violation_margin(m, Property::star_shapedness, w);
    report.verdict = Verdict::fail;
    report.witness = std::move(w);
  } else {
    report.verdict = Verdict::pass;
  }
  return report;
}

}  // namespace risklab
