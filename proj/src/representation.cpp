#include "risklab/representation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "risklab/error.hpp"

namespace risklab {

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::jia_orthant: return "jia_orthant";
    case Engine::star_hull: return "star_hull";
    case Engine::translate_check: return "translate_check";
    case Engine::intersection_probe: return "intersection_probe";
    case Engine::star_member: return "star_member";
  }
  return "unknown";
}

std::optional<Engine> engine_from_string(std::string_view name) {
  for (Engine e : {Engine::jia_orthant, Engine::star_hull, Engine::translate_check,
                   Engine::intersection_probe, Engine::star_member}) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

RiskFunctional orthant_member(const ProbSpace& space, const Position& z) {
  space.check(z);
  return RiskFunctional::custom(space, "orthant_member", [z](const Position& x) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, z[i] - x[i]);
    return best;
  });
}

namespace {

void require_monetary(const RiskFunctional& m, const SamplerConfig& sampler, std::size_t samples) {
  SamplerConfig audit = sampler;
  audit.count = std::max<std::size_t>(1, samples);
  for (Property p : {Property::monotonicity, Property::cash_invariance}) {
    const PropertyReport r = check(m, p, audit, kBisectionPropertyTol);
    if (r.verdict == Verdict::fail) {
      std::ostringstream os;
      os << "'" << m.label() << "' is not monetary: " << to_string(p) << " fails with margin "
         << r.witness->margin << "; the orthant representation is only claimed for monetary "
         << "functionals";
      throw ConfigError(os.str());
    }
  }
}

std::string z_label(std::size_t k) { return "Z[" + std::to_string(k) + "]"; }

RiskFunctional hull_member(const ProbSpace& space, const Position& z, const Position& y) {
  return RiskFunctional::custom(space, "hull_member", [z, y](const Position& x) {
    return hull_induced_value(z, y, x);
  });
}

}  // namespace

RepresentationReport jia_check(const RiskFunctional& m, const SamplerConfig& sampler, double tol,
                               const JiaOptions& options) {
  sampler.validate();
  require_monetary(m, sampler, options.audit_samples);
  const ProbSpace& space = m.space();
  RepresentationReport report;
  report.engine = Engine::jia_orthant;
  report.tol = tol;
  report.seed = sampler.seed;
  report.verdict = Verdict::pass;

  for (std::size_t i = 0; i < sampler.count; ++i) {
    const Position x = sample_position(space, sampler, i);
    const double rho = m(x);
    const Position z_star = x + rho;
    SampleRecord rec{x, orthant_member(space, z_star)(x), "Z*", rho};
    if (std::abs(rec.min_value - rho) > tol) {
      report.verdict = Verdict::fail;
      report.witnesses.push_back({{x, z_star}, {rho}, std::abs(rec.min_value - rho), "attainment"});
    }
    for (std::size_t k = 0; k < options.dominating; ++k) {
      const Position other = sample_position(space, sampler, i * options.dominating + k, Stream::family);
      const Position z = other + m(other);
      const double value = orthant_member(space, z)(x);
      if (value < rho - tol) {
        report.verdict = Verdict::fail;
        report.witnesses.push_back({{x, z}, {rho}, rho - value, "domination"});
      }
      if (value < rec.min_value) {
        rec.min_value = value;
        rec.argmin = z_label(k);
      }
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

MeasureFamily star_hull_family(const RiskFunctional& m, const Position& y,
                               const std::vector<Position>& zs, double tol) {
  const ProbSpace& space = m.space();
  if (zs.empty()) throw ConfigError("star hull family needs at least one Z");
  if (m(y) > tol) throw ConfigError("star center Y is not acceptable: rho(Y) > tol");
  std::vector<RiskFunctional> members;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    if (m(zs[k]) > tol) {
      throw ConfigError("hull generator " + z_label(k) + " is not acceptable: rho(Z) > tol");
    }
    members.push_back(hull_member(space, zs[k], y));
  }
  return MeasureFamily(std::move(members));
}

RepresentationReport star_hull_check(const RiskFunctional& m, const Position& y,
                                     const SamplerConfig& sampler, double tol,
                                     std::size_t members_per_sample) {
  sampler.validate();
  const ProbSpace& space = m.space();
  space.check(y);
  if (m(y) > tol) throw ConfigError("star center Y is not acceptable: rho(Y) > tol");
  const Position zero = Position::zeros(space.size());
  const bool centered_at_zero = y == zero;

  RepresentationReport report;
  report.engine = Engine::star_hull;
  report.tol = tol;
  report.seed = sampler.seed;
  report.verdict = Verdict::pass;

  for (std::size_t i = 0; i < sampler.count; ++i) {
    const Position x = sample_position(space, sampler, i);
    const double rho = m(x);
    const Position z_star = x + rho;
    SampleRecord rec{x, hull_induced_value(z_star, y, x), "Z*", rho};
    if (std::abs(rec.min_value - rho) > tol) {
      report.verdict = Verdict::fail;
      report.witnesses.push_back({{x, z_star, y}, {rho}, std::abs(rec.min_value - rho), "attainment"});
    }
    for (std::size_t k = 0; k < members_per_sample; ++k) {
      const Position other =
          sample_position(space, sampler, i * members_per_sample + k, Stream::family);
      const Position z = other + m(other);
      const double value = hull_induced_value(z, y, x);
      if (value < rho - tol) {
        report.verdict = Verdict::fail;
        report.witnesses.push_back({{x, z, y}, {rho}, rho - value, "domination"});
      }
      if (centered_at_zero) {
        const double at_zero = hull_induced_value(z, y, zero);
        if (at_zero > tol) {
          report.verdict = Verdict::fail;
          report.witnesses.push_back({{zero, z, y}, {0.0}, at_zero, "normalization"});
        }
      }
      if (value < rec.min_value) {
        rec.min_value = value;
        rec.argmin = z_label(k);
      }
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

TranslationBound translation_bound(const MeasureFamily& family) {
  const Position zero = Position::zeros(family.space().size());
  std::vector<double> values;
  values.reserve(family.size());
  for (const auto& member : family.members()) values.push_back(member(zero));
  TranslationBound bound{values[0], 0, values.size(), false};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > bound.c_star) bound = {values[i], i, values.size(), false};
  }
  if (family.lazily_indexed() && values.size() >= 2) {
    const bool nondecreasing = std::is_sorted(values.begin(), values.end());
    bound.diverging = nondecreasing && values.back() > values[values.size() - 2];
  }
  return bound;
}

RepresentationReport translate_check(const MeasureFamily& family, double c,
                                     const SamplerConfig& sampler, double tol) {
  const RiskFunctional shifted = translate(min_of(family), -c);
  const TranslationBound bound = translation_bound(family);

  RepresentationReport report;
  report.engine = Engine::translate_check;
  report.tol = tol;
  report.seed = sampler.seed;
  report.c_star = bound.c_star;
  report.diverging = bound.diverging;

  PropertyReport audit = check(shifted, Property::star_shapedness, sampler, tol);
  report.verdict = audit.verdict;
  if (audit.witness) report.witnesses.push_back(*audit.witness);
  report.audits.push_back(std::move(audit));

  const Position zero = Position::zeros(family.space().size());
  const double min_at_zero = eval_min(family, zero).value;
  std::ostringstream note;
  note.precision(17);
  if (c < min_at_zero) {
    Witness forced{{zero}, {2.0}, 0.0};
    forced.margin = violation_margin(shifted, Property::star_shapedness, forced);
    report.witnesses.push_back(forced);
    if (forced.margin > tol) report.verdict = Verdict::fail;
    note << "c below min member value at 0 (" << min_at_zero << "): forced witness X=0, lambda=2";
  } else if (c >= bound.c_star) {
    note << "c >= c* = " << bound.c_star << ": star-shapedness guaranteed";
  } else {
    note << "c in [" << min_at_zero << ", " << bound.c_star << "): empirical verdict only";
  }
  report.note = note.str();
  return report;
}

PropertyReport star_member_exists(const MeasureFamily& family, double tol) {
  PropertyReport report;
  report.property = Property::star_shapedness;
  report.tol = tol;
  report.samples = family.size();
  const Position zero = Position::zeros(family.space().size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i](zero) <= tol) {
      report.verdict = Verdict::pass;
      report.index = i;
      report.note = "member " + std::to_string(i) + " is nonpositive at 0";
      return report;
    }
  }
  report.verdict = Verdict::fail;
  report.note = "every member is positive at 0";
  return report;
}

RepresentationReport intersection_probe(const MeasureFamily& family, double tol) {
  const TranslationBound bound = translation_bound(family);
  RepresentationReport report;
  report.engine = Engine::intersection_probe;
  report.tol = tol;
  report.c_star = bound.c_star;
  report.diverging = bound.diverging;
  report.verdict = Verdict::pass;

  const Position probe = Position::constant(family.space().size(), bound.c_star + tol);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double value = family[i](probe);
    if (value > 0.0) {
      report.verdict = Verdict::fail;
      report.witnesses.push_back({{probe}, {static_cast<double>(i)}, value, "intersection"});
    }
  }
  std::ostringstream note;
  note.precision(17);
  note << "constant " << bound.c_star + tol
       << (report.verdict == Verdict::pass ? " accepted by all " : " rejected by some of ")
       << bound.probes << " probed members";
  if (bound.diverging) note << "; values at 0 rise to the probe boundary: empty intersection suspected";
  report.note = note.str();
  return report;
}

}  // namespace risklab
