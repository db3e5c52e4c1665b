#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "risklab/prob_space.hpp"

namespace risklab {

enum class NodeKind {
  neg_expectation,
  worst_case,
  value_at_risk,
  expected_shortfall,
  entropic,
  scenario_max,
  translate,
  min_of,
  floor_compose,
  custom,
};

class MeasureFamily;

/// An immutable expression tree mapping positions to real risk values.
/// Copies share the tree.
class RiskFunctional {
 public:
  static RiskFunctional neg_expectation(ProbSpace space);
  static RiskFunctional worst_case(ProbSpace space);
  static RiskFunctional value_at_risk(ProbSpace space, double alpha);
  static RiskFunctional expected_shortfall(ProbSpace space, double alpha);
  static RiskFunctional entropic(ProbSpace space, double theta);
  static RiskFunctional scenario_max(ProbSpace space, std::vector<std::vector<double>> scenarios);
  /// Escape hatch for functionals defined by other modules (induced measures,
  /// orthant members). `fn` receives positions already checked against `space`.
  static RiskFunctional custom(ProbSpace space, std::string label,
                               std::function<double(const Position&)> fn);

  double operator()(const Position& x) const;

  const ProbSpace& space() const;
  const std::string& label() const;
  NodeKind kind() const;

  /// Scenario vectors when kind() == scenario_max.
  const std::vector<std::vector<double>>* scenarios() const;

  struct Node;

 private:
  explicit RiskFunctional(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend RiskFunctional translate(const RiskFunctional&, double);
  friend RiskFunctional min_of(const MeasureFamily&);
  friend RiskFunctional floor_compose(const RiskFunctional&);
  friend double evaluate_unchecked(const RiskFunctional&, const Position&);
};

/// Evaluates m at x; throws ConfigError on a dimension mismatch.
inline double eval(const RiskFunctional& m, const Position& x) { return m(x); }

/// Finite, nonempty, ordered family sharing one space. A generator tag marks a
/// family that samples an infinite index set up to a probe budget.
class MeasureFamily {
 public:
  explicit MeasureFamily(std::vector<RiskFunctional> members,
                         std::optional<std::string> generator_tag = std::nullopt);

  std::size_t size() const { return members_.size(); }
  const RiskFunctional& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<RiskFunctional>& members() const { return members_; }
  const ProbSpace& space() const { return members_.front().space(); }
  const std::optional<std::string>& generator_tag() const { return generator_tag_; }
  bool lazily_indexed() const { return generator_tag_.has_value(); }

 private:
  std::vector<RiskFunctional> members_;
  std::optional<std::string> generator_tag_;
};

double var_alpha(const ProbSpace& space, double alpha, const Position& x);
double es_alpha(const ProbSpace& space, double alpha, const Position& x);
double entropic_value(const ProbSpace& space, double theta, const Position& x);
double scenario_max(const ProbSpace& space, const std::vector<std::vector<double>>& scenarios,
                    const Position& x);

/// m + a; "rho - c" is translate(rho, -c).
RiskFunctional translate(const RiskFunctional& m, double a);

/// Pointwise minimum over a family.
RiskFunctional min_of(const MeasureFamily& family);

struct MinResult {
  double value;
  std::size_t index;  // lowest index attaining the minimum
};
MinResult eval_min(const MeasureFamily& family, const Position& x);

/// Penalty f(lambda) = lambda for lambda >= epsilon, epsilon otherwise,
/// materialized on a finite grid that must contain epsilon.
struct PenaltySpec {
  double epsilon = 1.0;
  std::vector<double> grid;

  double penalty(double lambda) const { return lambda >= epsilon ? lambda : epsilon; }
};

/// {base + f(lambda) : lambda in grid}. Rejects epsilon <= 0, a grid missing
/// epsilon, and f(epsilon) <= -base(0).
MeasureFamily penalized_family(const RiskFunctional& base, const PenaltySpec& spec);

/// x -> m(floor(x)). Monotone when m is, but not cash-invariant.
RiskFunctional floor_compose(const RiskFunctional& m);

}  // namespace risklab
