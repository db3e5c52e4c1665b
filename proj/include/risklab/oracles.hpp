#pragma once

#include <optional>

#include "risklab/acceptance.hpp"
#include "risklab/axioms.hpp"
#include "risklab/measures.hpp"

// Brute-force baselines. Deliberately slow linear scans that share no code
// path with the solvers they check.

namespace risklab::oracles {

/// Smallest m = m_lo + k * pitch in [m_lo, m_hi] with x + m in A.
/// Throws ConfigError if none is accepted.
double grid_induced(const AcceptanceSet& a, const Position& x, double m_lo, double m_hi,
                    double pitch);

/// Scans t in {0, pitch, ..., 1}; in iff x >= t z + (1-t) y - band for some t.
bool hull_member_brute(const Position& z, const Position& y, const Position& x, double t_pitch,
                       double band = 1e-6);

/// Minimum over t of max_i (t z_i + (1-t) y_i - x_i), scanned on a coarse grid
/// and then on a fine grid around the best coarse point. The envelope is convex
/// and Lipschitz in t, so the result is within max|z - y| * fine / 2 of the
/// true minimum. x is in the hull iff the minimum is <= 0.
double hull_scan_min(const Position& z, const Position& y, const Position& x, double coarse = 1e-3,
                     double fine = 1e-7);

/// Ternary search of the convex envelope t -> max_i (t z_i + (1-t) y_i - x_i).
double hull_value_ternary(const Position& z, const Position& y, const Position& x,
                          int iterations = 200);

struct LatticeBox {
  double lo = -3.0;
  double hi = 3.0;
  double step = 1.0;
};

/// Exhaustive search over lattice positions in box^n with the default
/// weight / scaling grids. Returns the first violation above tol in
/// lexicographic order.
std::optional<Witness> lattice_counterexample(const RiskFunctional& m, Property property,
                                              const LatticeBox& box = {},
                                              double tol = kDefaultPropertyTol);

}  // namespace risklab::oracles
