#include "risklab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "risklab/error.hpp"

namespace risklab::oracles {

namespace {

std::vector<double> axis(const LatticeBox& box) {
  if (!(box.step > 0.0) || box.lo > box.hi) throw ConfigError("lattice box is invalid");
  std::vector<double> values;
  const auto count = static_cast<std::size_t>(std::floor((box.hi - box.lo) / box.step + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) values.push_back(box.lo + static_cast<double>(k) * box.step);
  return values;
}

std::vector<Position> lattice(std::size_t n, const LatticeBox& box) {
  const std::vector<double> ticks = axis(box);
  std::vector<Position> points;
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ticks[digits[i]];
    points.emplace_back(std::move(v));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digits[i] < ticks.size()) break;
      digits[i] = 0;
      if (i == 0) return points;
    }
    if (n == 0) return points;
  }
}

}  // namespace

double grid_induced(const AcceptanceSet& a, const Position& x, double m_lo, double m_hi,
                    double pitch) {
  if (!(pitch > 0.0)) throw ConfigError("grid pitch must be positive");
  for (std::size_t k = 0;; ++k) {
    const double m = m_lo + static_cast<double>(k) * pitch;
    if (m > m_hi) break;
    if (a.contains(x + m)) return m;
  }
  std::ostringstream os;
  os << "no accepted m in [" << m_lo << ", " << m_hi << "]";
  throw ConfigError(os.str());
}

bool hull_member_brute(const Position& z, const Position& y, const Position& x, double t_pitch,
                       double band) {
  if (!(t_pitch > 0.0)) throw ConfigError("t pitch must be positive");
  const auto steps = static_cast<std::size_t>(std::ceil(1.0 / t_pitch));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = std::min(1.0, static_cast<double>(k) * t_pitch);
    bool ok = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < t * z[i] + (1.0 - t) * y[i] - band) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

double hull_scan_min(const Position& z, const Position& y, const Position& x, double coarse,
                     double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) throw ConfigError("scan pitches must be positive");
  auto g = [&](double t) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, t * z[i] + (1.0 - t) * y[i] - x[i]);
    return worst;
  };
  auto scan = [&](double lo, double hi, double pitch, double& arg) {
    const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / pitch));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= steps; ++k) {
      const double t = std::min(hi, lo + static_cast<double>(k) * pitch);
      const double v = g(t);
      if (v < best) {
        best = v;
        arg = t;
      }
    }
    return best;
  };
  double t0 = 0.0;
  scan(0.0, 1.0, coarse, t0);
  double t1 = t0;
  return scan(std::max(0.0, t0 - coarse), std::min(1.0, t0 + coarse), fine, t1);
}

double hull_value_ternary(const Position& z, const Position& y, const Position& x, int iterations) {
  auto g = [&](double t) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, t * z[i] + (1.0 - t) * y[i] - x[i]);
    return best;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int k = 0; k < iterations; ++k) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) <= g(m2)) hi = m2;
    else lo = m1;
  }
  return std::min({g(lo), g(hi), g(0.5 * (lo + hi)), g(0.0), g(1.0)});
}

std::optional<Witness> lattice_counterexample(const RiskFunctional& m, Property property,
                                              const LatticeBox& box, double tol) {
  const std::size_t n = m.space().size();
  const std::vector<Position> points = lattice(n, box);
  auto found = [&](Witness w) -> std::optional<Witness> {
    w.margin = violation_margin(m, property, w);
    if (w.margin > tol) return w;
    return std::nullopt;
  };

  switch (property) {
    case Property::normalization:
      return found({{Position::zeros(n)}, {}, 0.0});
    case Property::monotonicity:
      for (const auto& x : points) {
        for (const auto& y : points) {
          if (!dominates(y, x)) continue;
          if (auto w = found({{x, y}, {}, 0.0})) return w;
        }
      }
      return std::nullopt;
    case Property::cash_invariance:
      for (const auto& x : points) {
        for (double c : {0.5 * box.step, box.step, -0.5 * box.step, -box.step}) {
          if (auto w = found({{x}, {c}, 0.0})) return w;
        }
      }
      return std::nullopt;
    case Property::convexity: {
      std::vector<double> values(points.size());
      for (std::size_t k = 0; k < points.size(); ++k) values[k] = m(points[k]);
      for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = 0; b < points.size(); ++b) {
          for (double t : default_convex_weights()) {
            const double lhs = m(combine(t, points[a], 1.0 - t, points[b]));
            if (lhs - (t * values[a] + (1.0 - t) * values[b]) > tol) {
              return found({{points[a], points[b]}, {t}, 0.0});
            }
          }
        }
      }
      return std::nullopt;
    }
    case Property::positive_homogeneity:
    case Property::star_shapedness: {
      const std::vector<double> scalings = property == Property::star_shapedness
                                               ? default_star_scalings()
                                               : default_homogeneity_scalings();
      for (const auto& x : points) {
        for (double s : scalings) {
          if (auto w = found({{x}, {s}, 0.0})) return w;
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace risklab::oracles
