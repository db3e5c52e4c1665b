#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risklab/acceptance.hpp"
#include "risklab/axioms.hpp"
#include "risklab/measures.hpp"

namespace risklab {

enum class Engine { jia_orthant, star_hull, translate_check, intersection_probe, star_member };

std::string_view to_string(Engine e);
std::optional<Engine> engine_from_string(std::string_view name);

struct SampleRecord {
  Position x;
  double min_value;         // minimum over the probed representing family
  std::string argmin;       // identifies the attaining member
  double rho;               // the represented functional at x
};

struct RepresentationReport {
  Engine engine = Engine::jia_orthant;
  Verdict verdict = Verdict::inconclusive;
  std::vector<SampleRecord> records;
  std::optional<double> c_star;
  bool diverging = false;
  std::vector<Witness> witnesses;
  /// Sub-audits run by the engine (e.g. the star-shapedness audit of rho - c).
  std::vector<PropertyReport> audits;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string note;
};

inline constexpr double kClosedFormTol = 1e-9;
inline constexpr double kBisectionPropertyTol = 1e-7;

/// X -> max_i (z_i - X_i), the measure induced by the orthant {X >= z}.
RiskFunctional orthant_member(const ProbSpace& space, const Position& z);

struct JiaOptions {
  /// Random acceptable Z probed per sample for the domination check.
  std::size_t dominating = 100;
  /// Samples used by the monetary pre-audit.
  std::size_t audit_samples = 1000;
};

/// Verifies rho(x) = min over orthant members with attainment at
/// Z* = x + rho(x), and domination by random acceptable Z = x' + rho(x').
/// Throws ConfigError when rho fails the monetary audit.
RepresentationReport jia_check(const RiskFunctional& m, const SamplerConfig& sampler,
                               double tol = kClosedFormTol, const JiaOptions& options = {});

/// Measures induced by conv(A_Z U A_Y) for each Z in zs.
MeasureFamily star_hull_family(const RiskFunctional& m, const Position& y,
                               const std::vector<Position>& zs, double tol = kClosedFormTol);

/// Reconstruction through hull members: for each sampled x the member built at
/// Z* = x + rho(x) attains rho(x), members at random acceptable Z dominate
/// rho, and with y = 0 every member is <= tol at 0.
RepresentationReport star_hull_check(const RiskFunctional& m, const Position& y,
                                     const SamplerConfig& sampler, double tol = kClosedFormTol,
                                     std::size_t members_per_sample = 20);

struct TranslationBound {
  double c_star;
  std::size_t argmax;
  std::size_t probes;
  /// Lazily indexed family whose values at 0 rise up to the probe boundary.
  bool diverging;
};

TranslationBound translation_bound(const MeasureFamily& family);

/// Star-shapedness audit of min_of(family) - c. When c is below every
/// member's value at 0 the forced witness (X = 0, lambda = 2) is recorded.
RepresentationReport translate_check(const MeasureFamily& family, double c,
                                     const SamplerConfig& sampler,
                                     double tol = kDefaultPropertyTol);

/// Pass iff some member has value <= tol at 0; report.index names it.
PropertyReport star_member_exists(const MeasureFamily& family, double tol = kClosedFormTol);

/// Checks that the constant c* + tol lies in every probed acceptance set.
RepresentationReport intersection_probe(const MeasureFamily& family, double tol = kClosedFormTol);

}  // namespace risklab
