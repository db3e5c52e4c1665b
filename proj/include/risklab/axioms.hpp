#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risklab/measures.hpp"
#include "risklab/prob_space.hpp"

namespace risklab {

enum class Property {
  monotonicity,
  cash_invariance,
  normalization,
  convexity,
  positive_homogeneity,
  star_shapedness,
};

inline constexpr std::array<Property, 6> kAllProperties = {
    Property::monotonicity,       Property::cash_invariance,
    Property::normalization,      Property::convexity,
    Property::positive_homogeneity, Property::star_shapedness,
};

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Property p);
std::string_view to_string(Verdict v);
std::optional<Property> property_from_string(std::string_view name);

/// Counterexample record. Layout per property:
///   monotonicity          positions {X, Y} with Y >= X
///   cash_invariance       positions {X},    scalars {c}
///   normalization         positions {0}
///   convexity             positions {X, Y}, scalars {w}
///   positive_homogeneity  positions {X},    scalars {lambda}
///   star_shapedness       positions {X},    scalars {lambda}; lambda >= 1 tests
///                         rho(lambda X) >= lambda rho(X), lambda in (0,1) tests
///                         the equivalent rho(lambda X) <= lambda rho(X)
/// `margin` is the size of the violation. `check` names the failed test for
/// witnesses that are not property witnesses (representation engines).
struct Witness {
  std::vector<Position> positions;
  std::vector<double> scalars;
  double margin = 0.0;
  std::string check = {};
};

struct PropertyReport {
  Property property = Property::monotonicity;
  Verdict verdict = Verdict::inconclusive;
  std::optional<Witness> witness;
  std::size_t samples = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  /// Family member that decided the verdict, for family-level checks.
  std::optional<std::size_t> index;
  std::string note;
};

inline constexpr double kDefaultPropertyTol = 1e-7;

std::vector<double> default_convex_weights();
std::vector<double> default_star_scalings();
std::vector<double> default_homogeneity_scalings();

/// Recomputes the violation encoded in a witness, independently of how it was
/// found. Positive and above tol means the witness is genuine.
double violation_margin(const RiskFunctional& m, Property property, const Witness& w);

/// Sampled falsification of one property over `sampler.count` deterministic
/// samples. The first failing sample (by index) wins and is greedily shrunk.
PropertyReport check(const RiskFunctional& m, Property property, const SamplerConfig& sampler,
                     double tol = kDefaultPropertyTol);

struct Classification {
  bool monetary = false;
  bool convex = false;      // convex risk measure
  bool coherent = false;
  bool star_shaped = false; // monetary and star-shaped
  bool normalized = false;
};

struct AuditResult {
  std::vector<PropertyReport> reports;  // in kAllProperties order
  Classification classification;

  const PropertyReport& at(Property p) const;
};

Classification classify(const std::vector<PropertyReport>& reports);

AuditResult full_audit(const RiskFunctional& m, const SamplerConfig& sampler,
                       double tol = kDefaultPropertyTol);

/// Star-shapedness forces rho(0) <= 0. Fails with witness (X = 0, lambda = 2)
/// when rho(0) > tol.
PropertyReport star_implies_zero_check(const RiskFunctional& m, double tol = kDefaultPropertyTol);

/// Greedy simplification: pulls entries toward 0 / integers / half-integers and
/// scalars toward simple values while the violation persists above tol.
Witness shrink_witness(const RiskFunctional& m, Property property, Witness w, double tol);

}  // namespace risklab
