#include "risklab/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "risklab/acceptance.hpp"
#include "risklab/error.hpp"

namespace risklab {

namespace {

constexpr std::size_t kHomogeneityAuditSamples = 1000;
const double kCertifyConstants[] = {-3.0, -1.0, 0.5, 1.0, 2.5};

}  // namespace

std::vector<double> example1_grid(double epsilon) {
  return {0.5 * epsilon, epsilon, 2.0 * epsilon, 10.0 * epsilon};
}

Example1Report example1(const RiskFunctional& base, double epsilon, const std::vector<double>& ks,
                        const SamplerConfig& sampler) {
  for (double k : ks) {
    if (!(k >= 1.0)) throw ConfigError("example1: every k must satisfy k >= 1");
  }
  Example1Report report;
  report.epsilon = epsilon;
  report.grid = example1_grid(epsilon);
  const PenaltySpec spec{epsilon, report.grid};
  const MeasureFamily family = penalized_family(base, spec);
  const RiskFunctional rho_eps = min_of(family);
  const std::size_t n = base.space().size();
  report.f_epsilon = spec.penalty(epsilon);
  report.base_at_zero = base(Position::zeros(n));

  for (std::size_t i = 0; i < sampler.count; ++i) {
    const Position x = sample_position(base.space(), sampler, i);
    const double dev = std::abs(eval_min(family, x).value - (base(x) + report.f_epsilon));
    report.family_min_deviation = std::max(report.family_min_deviation, dev);
  }

  SamplerConfig ph_audit = sampler;
  ph_audit.count = std::min(sampler.count, kHomogeneityAuditSamples);
  report.homogeneous_base =
      check(base, Property::positive_homogeneity, ph_audit).verdict == Verdict::pass;

  bool all_pass = report.family_min_deviation <= kExampleTol;
  for (double k : ks) {
    Example1Row row;
    row.k = k;
    row.formula = (report.f_epsilon + report.base_at_zero) * (1.0 - k);
    const Position one = Position::constant(n, 1.0);
    row.measured = rho_eps(k * one) - k * rho_eps(one);

    auto certify = [&](const Position& x, double expected) {
      const double measured = rho_eps(k * x) - k * rho_eps(x);
      row.max_deviation = std::max(row.max_deviation, std::abs(measured - expected));
      ++row.certified_positions;
    };
    for (double c : kCertifyConstants) certify(Position::constant(n, c), row.formula);
    if (report.homogeneous_base) {
      const double expected = report.f_epsilon * (1.0 - k);
      for (std::size_t i = 0; i < sampler.count; ++i) {
        certify(sample_position(base.space(), sampler, i), expected);
      }
    }
    if (k > 1.0) {
      Witness w{{one}, {k}, 0.0};
      w.margin = violation_margin(rho_eps, Property::star_shapedness, w);
      row.witness = std::move(w);
    }
    const bool witness_ok = k == 1.0 || (row.witness && row.witness->margin > 0.0);
    row.verdict = row.max_deviation <= kExampleTol && std::abs(row.measured - row.formula) <= kExampleTol &&
                          witness_ok
                      ? Verdict::pass
                      : Verdict::fail;
    all_pass = all_pass && row.verdict == Verdict::pass;
    report.rows.push_back(std::move(row));
  }
  report.verdict = all_pass ? Verdict::pass : Verdict::fail;
  return report;
}

double dyadic_lambda(int j) { return 1.0 - std::ldexp(1.0, -j); }

RiskFunctional floor_induced_measure(const RiskFunctional& base, double bisection_tol) {
  return induced_functional(from_measure(floor_compose(base)), bisection_tol,
                            "induced(floor_compose(" + base.label() + "))");
}

Example2Report example2_sweep(const RiskFunctional& base, const std::vector<double>& ks,
                              const Example2Options& options) {
  if (options.max_depth < 1 || options.max_depth > 60) {
    throw ConfigError("example2: dyadic depth must lie in [1, 60]");
  }
  const std::size_t n = base.space().size();
  const RiskFunctional raw = floor_compose(base);
  const RiskFunctional induced = floor_induced_measure(base, options.bisection_tol);

  Example2Report report;
  report.base_at_zero = base(Position::zeros(n));
  report.max_depth = options.max_depth;
  report.bisection_tol = options.bisection_tol;
  report.strict_tol = options.strict_tol;
  const Position one = Position::constant(n, 1.0);

  auto contraction_margin = [](const RiskFunctional& m, double k, const Position& x, double lambda) {
    return violation_margin(translate(m, k), Property::star_shapedness, Witness{{x}, {lambda}, 0.0});
  };

  bool all_pass = true;
  for (double k : ks) {
    Example2Row row;
    row.k = k;
    for (int j = 1; j <= options.max_depth && !row.raw; ++j) {
      const double lambda = dyadic_lambda(j);
      const double ratio = (std::floor(lambda) - lambda * std::floor(1.0)) / (1.0 - lambda);
      if (ratio < k + report.base_at_zero) {
        const double margin = contraction_margin(raw, k, one, lambda);
        if (margin > options.strict_tol) {
          row.raw = SweepWitness{j, lambda, one, margin};
          row.raw_ratio = ratio;
        }
      }
    }
    // rho_A is cash-invariant, hence linear on constants; the witness has to
    // straddle a staircase corner: X = 2^(j-1) (e_a - e_b), so lambda X sits
    // half a unit inside the lattice.
    for (int j = 1; j <= options.max_depth && !row.induced; ++j) {
      const double lambda = dyadic_lambda(j);
      std::vector<Position> candidates{one};
      const double scale = std::ldexp(1.0, j - 1);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (a == b) continue;
          std::vector<double> v(n, 0.0);
          v[a] = scale;
          v[b] = -scale;
          candidates.emplace_back(std::move(v));
        }
      }
      for (const Position& x : candidates) {
        const double margin = contraction_margin(induced, k, x, lambda);
        if (margin > options.strict_tol) {
          row.induced = SweepWitness{j, lambda, x, margin};
          break;
        }
      }
    }
    row.verdict = row.raw && row.induced ? Verdict::pass : Verdict::fail;
    all_pass = all_pass && row.verdict == Verdict::pass;
    report.rows.push_back(std::move(row));
  }
  report.verdict = all_pass ? Verdict::pass : Verdict::fail;
  return report;
}

std::vector<std::vector<double>> default_figure_scenarios() {
  return {{0.5, 0.5}, {1.0 / 3.0, 2.0 / 3.0}};
}

namespace {

// Endpoint of the ray from the origin along (dx, dy) where it leaves the window.
Point2 clip_ray(const Window& w, double dx, double dy) {
  double t = std::numeric_limits<double>::infinity();
  if (dx > 0) t = std::min(t, w.x_hi / dx);
  if (dx < 0) t = std::min(t, w.x_lo / dx);
  if (dy > 0) t = std::min(t, w.y_hi / dy);
  if (dy < 0) t = std::min(t, w.y_lo / dy);
  return {t * dx, t * dy};
}

std::vector<Point2> simplify(const std::vector<Point2>& pts) {
  std::vector<Point2> out;
  for (const Point2& p : pts) {
    if (!out.empty() && out.back() == p) continue;
    if (out.size() >= 2) {
      const Point2& a = out[out.size() - 2];
      const Point2& b = out.back();
      const bool same_x = a.x == b.x && b.x == p.x;
      const bool same_y = a.y == b.y && b.y == p.y;
      if (same_x || same_y) {
        out.back() = p;
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

bool is_integer(double v) { return std::floor(v) == v; }

}  // namespace

FigureData figure_data(const RiskFunctional& coherent, const Window& window) {
  if (coherent.space().size() != 2) throw ConfigError("figure: the space must have 2 outcomes");
  const auto* scenarios = coherent.scenarios();
  if (!scenarios) throw ConfigError("figure: the coherent measure must be a scenario_max node");
  if (!is_integer(window.x_lo) || !is_integer(window.x_hi) || !is_integer(window.y_lo) ||
      !is_integer(window.y_hi) || window.x_lo >= 0 || window.x_hi <= 0 || window.y_lo >= 0 ||
      window.y_hi <= 0) {
    throw ConfigError("figure: window must be integer-aligned and contain the origin");
  }
  FigureData fig;
  fig.window = window;
  fig.scenarios = *scenarios;

  // Acceptance cone {x : q . x >= 0 for every scenario q}. Above the origin
  // its boundary is x2 = s x1 with s the smallest slope -q1/q2 on the left and
  // the largest on the right; a scenario with q2 = 0 closes the left half.
  bool left_open = true;
  double slope_left = std::numeric_limits<double>::infinity();
  double slope_right = -std::numeric_limits<double>::infinity();
  for (const auto& q : *scenarios) {
    if (q[1] == 0.0) {
      left_open = false;
      continue;
    }
    const double s = -q[0] / q[1];
    slope_left = std::min(slope_left, s);
    slope_right = std::max(slope_right, s);
  }
  const Point2 origin{0.0, 0.0};
  const Point2 left_end = left_open ? clip_ray(window, -1.0, -slope_left) : Point2{0.0, window.y_hi};
  const Point2 right_end = std::isfinite(slope_right) ? clip_ray(window, 1.0, slope_right)
                                                      : Point2{0.0, window.y_lo};
  fig.cone_boundary = {left_end, origin, right_end};
  fig.cone_region = fig.cone_boundary;
  if (right_end.x == window.x_hi) fig.cone_region.push_back({window.x_hi, window.y_hi});
  if (left_end.x == window.x_lo) fig.cone_region.push_back({window.x_lo, window.y_hi});

  // Staircase: in column [a, a+1) the floor-composed set is x2 >= b_min(a),
  // with b_min the least integer b such that coherent((a, b)) <= 0.
  const auto column_level = [&](double a) {
    for (double b = window.y_lo; b <= window.y_hi; b += 1.0) {
      if (coherent(Position{a, b}) <= 0.0) return b;
    }
    return window.y_hi;
  };
  std::vector<Point2> raw;
  for (double a = window.x_lo; a < window.x_hi; a += 1.0) {
    const double level = column_level(a);
    raw.push_back({a, level});
    raw.push_back({a + 1.0, level});
  }
  fig.staircase_boundary = simplify(raw);
  fig.staircase_region = fig.staircase_boundary;
  fig.staircase_region.push_back({window.x_hi, window.y_hi});
  fig.staircase_region.push_back({window.x_lo, window.y_hi});
  return fig;
}

double staircase_level(const FigureData& fig, double x1) {
  const auto& b = fig.staircase_boundary;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (b[i].y == b[i + 1].y && x1 >= b[i].x && x1 < b[i + 1].x) return b[i].y;
  }
  return b.empty() ? fig.window.y_hi : b.back().y;
}

GridAgreement staircase_agreement(const FigureData& fig, const RiskFunctional& coherent,
                                  double pitch) {
  if (!(pitch > 0)) throw ConfigError("figure: grid pitch must be positive");
  const RiskFunctional floored = floor_compose(coherent);
  const Window& w = fig.window;
  const auto steps = [pitch](double lo, double hi) {
    return static_cast<long>(std::floor((hi - lo) / pitch + 1e-9));
  };
  const auto on_line = [](double v) { return std::abs(v - std::round(v)) < 1e-9; };
  GridAgreement g;
  for (long i = 0; i <= steps(w.x_lo, w.x_hi); ++i) {
    const double x1 = w.x_lo + static_cast<double>(i) * pitch;
    for (long j = 0; j <= steps(w.y_lo, w.y_hi); ++j) {
      const double x2 = w.y_lo + static_cast<double>(j) * pitch;
      if (on_line(x1) || on_line(x2)) {
        ++g.skipped;
        continue;
      }
      ++g.checked;
      const bool drawn = x2 >= staircase_level(fig, x1);
      const bool member = floored(Position{x1, x2}) <= 0.0;
      if (drawn != member) {
        if (!g.first_mismatch) g.first_mismatch = Point2{x1, x2};
        ++g.mismatches;
      }
    }
  }
  return g;
}

}  // namespace risklab
