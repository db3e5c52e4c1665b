#pragma once

// Slow reference formulas, written from the definitions and sharing nothing
// with the library's evaluation code.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "risklab/axioms.hpp"
#include "risklab/prob_space.hpp"

namespace ref {

using Vec = std::vector<double>;

inline double expectation(const Vec& p, const Vec& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * x[i];
  return s;
}

// P(x + m < 0)
inline double loss_prob(const Vec& p, const Vec& x, double m) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (x[i] + m < 0) s += p[i];
  }
  return s;
}

// inf{m : P(x + m < 0) <= alpha}; the infimum sits at one of the -x_i.
inline double var(const Vec& p, double alpha, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  for (double xi : x) {
    if (loss_prob(p, x, -xi) <= alpha + 1e-12) best = std::min(best, -xi);
  }
  return best;
}

// min_c { c + E[(-x - c)^+] / alpha }, minimized over the kinks c = -x_i.
inline double es(const Vec& p, double alpha, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  for (double xi : x) {
    const double c = -xi;
    double tail = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) tail += p[i] * std::max(-x[i] - c, 0.0);
    best = std::min(best, c + tail / alpha);
  }
  return best;
}

inline double entropic(const Vec& p, double theta, const Vec& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * std::exp(-theta * x[i]);
  return std::log(s) / theta;
}

inline double scenario_max(const std::vector<Vec>& qs, const Vec& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& q : qs) best = std::max(best, -expectation(q, x));
  return best;
}

inline Vec floor(const Vec& x) {
  Vec out;
  for (double v : x) out.push_back(std::floor(v));
  return out;
}

inline Vec axpby(double a, const Vec& x, double b, const Vec& y) {
  Vec out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(a * x[i] + b * y[i]);
  return out;
}

inline Vec shift(const Vec& x, double c) {
  Vec out = x;
  for (double& v : out) v += c;
  return out;
}

// Violation size encoded in a witness, straight from the defining inequality.
template <class F>
double margin(F rho, risklab::Property p, const risklab::Witness& w) {
  using risklab::Property;
  const Vec& x = w.positions.at(0).vec();
  switch (p) {
    case Property::monotonicity:
      return rho(w.positions.at(1).vec()) - rho(x);
    case Property::cash_invariance: {
      const double c = w.scalars.at(0);
      return std::abs(rho(shift(x, c)) - (rho(x) - c));
    }
    case Property::normalization:
      return std::abs(rho(Vec(x.size(), 0.0)));
    case Property::convexity: {
      const double a = w.scalars.at(0);
      const Vec& y = w.positions.at(1).vec();
      return rho(axpby(a, x, 1 - a, y)) - (a * rho(x) + (1 - a) * rho(y));
    }
    case Property::positive_homogeneity: {
      const double l = w.scalars.at(0);
      return std::abs(rho(axpby(l, x, 0, x)) - l * rho(x));
    }
    case Property::star_shapedness: {
      const double l = w.scalars.at(0);
      const double lhs = rho(axpby(l, x, 0, x));
      return l >= 1 ? l * rho(x) - lhs : lhs - l * rho(x);
    }
  }
  return 0.0;
}

}  // namespace ref
