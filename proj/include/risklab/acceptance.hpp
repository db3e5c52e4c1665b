#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "risklab/axioms.hpp"
#include "risklab/measures.hpp"
#include "risklab/prob_space.hpp"

namespace risklab {

/// Monotone acceptance set, represented by a membership oracle plus the
/// structure it was built from. Closed-form induced measures are used for
/// orthants and hulls; everything else goes through bisection.
class AcceptanceSet {
 public:
  enum class Kind { from_measure, orthant, hull, union_of, intersection_of };

  /// {X : m(X) <= 0}
  static AcceptanceSet from_measure(RiskFunctional m);
  /// {X : X >= z}
  static AcceptanceSet orthant_at(ProbSpace space, Position z);
  /// conv({X >= z} U {X >= y}) = {X : X >= t z + (1-t) y for some t in [0,1]}
  static AcceptanceSet hull_of_orthants(ProbSpace space, Position z, Position y);
  static AcceptanceSet union_of(std::vector<AcceptanceSet> sets);
  static AcceptanceSet intersection_of(std::vector<AcceptanceSet> sets);

  bool contains(const Position& x) const;

  Kind kind() const;
  const ProbSpace& space() const;
  std::string describe() const;

  /// inf{m : x + m in A} when the structure admits an exact formula.
  std::optional<double> closed_form(const Position& x) const;

  struct Data;

 private:
  explicit AcceptanceSet(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

AcceptanceSet from_measure(RiskFunctional m);
AcceptanceSet orthant_at(ProbSpace space, Position z);
AcceptanceSet hull_of_orthants(ProbSpace space, Position z, Position y);
AcceptanceSet union_of(std::vector<AcceptanceSet> sets);
AcceptanceSet intersection_of(std::vector<AcceptanceSet> sets);

/// Exact hull membership: intersects the per-coordinate feasible t-intervals.
bool hull_contains(const Position& z, const Position& y, const Position& x);

/// min over t in [0,1] of max_i (t z_i + (1-t) y_i - x_i), by breakpoint
/// enumeration of the upper envelope of the affine pieces.
double hull_induced_value(const Position& z, const Position& y, const Position& x);

/// Induced value; non-finite when no bracket exists within the cap.
struct InducedValue {
  enum class Kind { finite, plus_infinity, minus_infinity };
  Kind kind = Kind::finite;
  double value = 0.0;

  bool finite() const { return kind == Kind::finite; }
};

/// lo is rejected, hi is accepted.
struct Bracket {
  double lo;
  double hi;
};

inline constexpr double kBracketCap = 1e6;
inline constexpr double kDefaultBisectionTol = 1e-9;

/// Doubling search from +-1 out to kBracketCap. Returns the bracket, or the
/// non-finite kind that the failed search implies.
std::variant<Bracket, InducedValue::Kind> find_bracket(const AcceptanceSet& a, const Position& x);

/// inf{m : x + m in A} to within tol. The bisection answer is on the accepted
/// side of the boundary, so x + value is always a member.
InducedValue induced_measure(const AcceptanceSet& a, const Position& x,
                             double tol = kDefaultBisectionTol);

/// rho_A as a RiskFunctional. Evaluating it at a position with a non-finite
/// induced value throws NumericalError.
RiskFunctional induced_functional(const AcceptanceSet& a, double tol = kDefaultBisectionTol,
                                  std::string label = {});

struct SetCheckOptions {
  std::size_t member_budget = 100000;
  std::size_t random_lambdas = 8;
};

std::vector<double> default_set_lambdas();

/// Samples members X of A and checks lambda X + (1 - lambda) v in A on the
/// grid plus random lambdas in (0, 1). Witness: positions {X, v}, scalars {lambda}.
PropertyReport is_star_shaped_at(const AcceptanceSet& a, const Position& v,
                                 const SamplerConfig& sampler,
                                 const std::vector<double>& lambdas = default_set_lambdas(),
                                 const SetCheckOptions& options = {});

/// Samples member pairs and checks convex combinations.
/// Witness: positions {X, Y}, scalars {w}.
PropertyReport is_convex_sampled(const AcceptanceSet& a, const SamplerConfig& sampler,
                                 const SetCheckOptions& options = {});

/// Distance (in cash) by which the combination in a set-property witness
/// misses A; positive means the witness still violates the property.
double set_witness_margin(const AcceptanceSet& a, Property property, const Witness& w);

}  // namespace risklab
