#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "risklab/axioms.hpp"
#include "risklab/measures.hpp"

namespace risklab {

// ---------------------------------------------------------------------------
// Penalized family rho_lambda = rho + f(lambda): its minimum rho + f(eps) is
// convex but not star-shaped, with rho_eps(kX) - k rho_eps(X) =
// (f(eps) + rho(0)) (1 - k) on constants (and f(eps)(1 - k) everywhere when rho
// is positively homogeneous).
// ---------------------------------------------------------------------------

struct Example1Row {
  double k = 1.0;
  /// (f(eps) + rho(0)) (1 - k)
  double formula;
  /// rho_eps(k) - k rho_eps(1) for the constant position 1.
  double measured;
  /// Largest |measured - expected| over the certified positions.
  double max_deviation = 0.0;
  std::size_t certified_positions = 0;
  /// Star-shapedness witness for rho_eps: X = 1, lambda = k. Absent for k = 1.
  std::optional<Witness> witness;
  Verdict verdict = Verdict::inconclusive;
};

struct Example1Report {
  double epsilon = 0.0;
  std::vector<double> grid;
  double f_epsilon = 0.0;
  double base_at_zero = 0.0;
  bool homogeneous_base = false;
  /// max |min_lambda rho_lambda(x) - (rho(x) + f(eps))| over samples.
  double family_min_deviation = 0.0;
  std::vector<Example1Row> rows;
  Verdict verdict = Verdict::inconclusive;
};

inline constexpr double kExampleTol = 1e-12;

/// Penalty grid used by example1: {eps/2, eps, 2 eps, 10 eps}.
std::vector<double> example1_grid(double epsilon);

/// Requires eps > 0, f(eps) > -base(0) and every k >= 1.
Example1Report example1(const RiskFunctional& base, double epsilon, const std::vector<double>& ks,
                        const SamplerConfig& sampler);

// ---------------------------------------------------------------------------
// Floor composition rho(X) = base(floor X) and its induced measure rho_A. No
// translation rho + k is star-shaped; the sweep finds a witness for each k.
// ---------------------------------------------------------------------------

/// Dyadic contraction 1 - 2^-j.
double dyadic_lambda(int j);

struct SweepWitness {
  int depth = 0;
  double lambda = 0.0;
  Position x;
  /// (rho + k)(lambda X) - lambda (rho + k)(X); > 0 violates star-shapedness.
  double margin = 0.0;
};

struct Example2Row {
  double k = 0.0;
  /// Constant X = 1 on the raw floor functional:
  /// (floor(lambda) - lambda floor(1)) / (1 - lambda) < k + base(0).
  std::optional<SweepWitness> raw;
  double raw_ratio = 0.0;
  /// Witness on the induced, cash-invariant measure rho_A.
  std::optional<SweepWitness> induced;
  Verdict verdict = Verdict::inconclusive;
};

struct Example2Report {
  double base_at_zero = 0.0;
  int max_depth = 40;
  double bisection_tol = 0.0;
  double strict_tol = 0.0;
  std::vector<Example2Row> rows;
  Verdict verdict = Verdict::inconclusive;
};

struct Example2Options {
  int max_depth = 40;
  double bisection_tol = 1e-12;
  /// Margin a witness must exceed to count as strict.
  double strict_tol = 1e-9;
};

/// rho_A for A = {X : base(floor X) <= 0}.
RiskFunctional floor_induced_measure(const RiskFunctional& base, double bisection_tol = 1e-12);

Example2Report example2_sweep(const RiskFunctional& base, const std::vector<double>& ks,
                              const Example2Options& options = {});

// ---------------------------------------------------------------------------
// Two-outcome picture: the acceptance cone of a scenario-max measure and the
// staircase acceptance set of its floor composition.
// ---------------------------------------------------------------------------

struct Point2 {
  double x;
  double y;
  bool operator==(const Point2&) const = default;
};

struct Window {
  double x_lo = -4.0;
  double x_hi = 4.0;
  double y_lo = -2.0;
  double y_hi = 4.0;
};

struct FigureData {
  Window window;
  std::vector<Point2> cone_boundary;
  std::vector<Point2> staircase_boundary;
  /// Closed regions (implicitly closed polygons) above each boundary.
  std::vector<Point2> cone_region;
  std::vector<Point2> staircase_region;
  std::vector<std::vector<double>> scenarios;
};

std::vector<std::vector<double>> default_figure_scenarios();

/// Requires a 2-outcome scenario_max functional and an integer-aligned window.
FigureData figure_data(const RiskFunctional& coherent, const Window& window = {});

/// Height of the staircase boundary above x1 (the level of the cell column).
double staircase_level(const FigureData& fig, double x1);

struct GridAgreement {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // on a cell boundary
  std::size_t mismatches = 0;
  std::optional<Point2> first_mismatch;
};

/// Compares staircase membership (x2 >= level) with coherent(floor(x)) <= 0
/// on a pitch grid over the window, skipping points on integer lines.
GridAgreement staircase_agreement(const FigureData& fig, const RiskFunctional& coherent,
                                  double pitch = 0.05);

}  // namespace risklab
