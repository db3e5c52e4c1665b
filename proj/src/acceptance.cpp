#include "risklab/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "risklab/error.hpp"

namespace risklab {

struct AcceptanceSet::Data {
  Kind kind;
  ProbSpace space;
  std::optional<RiskFunctional> measure;
  Position z;
  Position y;
  std::vector<AcceptanceSet> members;
};

namespace {

constexpr int kMaxBisectionSteps = 200;
constexpr int kSetShrinkRounds = 3;

void check_members(const std::vector<AcceptanceSet>& sets, const char* what) {
  if (sets.empty()) throw ConfigError(std::string(what) + " of acceptance sets needs at least one set");
  for (const auto& s : sets) {
    if (!(s.space() == sets.front().space())) {
      throw ConfigError(std::string(what) + " members must share one probability space");
    }
  }
}

std::string join_descriptions(const std::vector<AcceptanceSet>& sets) {
  std::string out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) out += ", ";
    out += sets[i].describe();
  }
  return out;
}

}  // namespace

AcceptanceSet AcceptanceSet::from_measure(RiskFunctional m) {
  ProbSpace space = m.space();
  return AcceptanceSet(std::make_shared<const Data>(
      Data{Kind::from_measure, std::move(space), std::move(m), {}, {}, {}}));
}

AcceptanceSet AcceptanceSet::orthant_at(ProbSpace space, Position z) {
  space.check(z);
  return AcceptanceSet(std::make_shared<const Data>(
      Data{Kind::orthant, std::move(space), std::nullopt, std::move(z), {}, {}}));
}

AcceptanceSet AcceptanceSet::hull_of_orthants(ProbSpace space, Position z, Position y) {
  space.check(z);
  space.check(y);
  return AcceptanceSet(std::make_shared<const Data>(
      Data{Kind::hull, std::move(space), std::nullopt, std::move(z), std::move(y), {}}));
}

AcceptanceSet AcceptanceSet::union_of(std::vector<AcceptanceSet> sets) {
  check_members(sets, "union");
  ProbSpace space = sets.front().space();
  return AcceptanceSet(std::make_shared<const Data>(
      Data{Kind::union_of, std::move(space), std::nullopt, {}, {}, std::move(sets)}));
}

AcceptanceSet AcceptanceSet::intersection_of(std::vector<AcceptanceSet> sets) {
  check_members(sets, "intersection");
  ProbSpace space = sets.front().space();
  return AcceptanceSet(std::make_shared<const Data>(
      Data{Kind::intersection_of, std::move(space), std::nullopt, {}, {}, std::move(sets)}));
}

AcceptanceSet from_measure(RiskFunctional m) { return AcceptanceSet::from_measure(std::move(m)); }
AcceptanceSet orthant_at(ProbSpace space, Position z) {
  return AcceptanceSet::orthant_at(std::move(space), std::move(z));
}
AcceptanceSet hull_of_orthants(ProbSpace space, Position z, Position y) {
  return AcceptanceSet::hull_of_orthants(std::move(space), std::move(z), std::move(y));
}
AcceptanceSet union_of(std::vector<AcceptanceSet> sets) {
  return AcceptanceSet::union_of(std::move(sets));
}
AcceptanceSet intersection_of(std::vector<AcceptanceSet> sets) {
  return AcceptanceSet::intersection_of(std::move(sets));
}

bool hull_contains(const Position& z, const Position& y, const Position& x) {
  if (z.size() != y.size() || z.size() != x.size()) {
    throw ConfigError("hull membership: dimension mismatch");
  }
  // x_i - y_i >= t (z_i - y_i) for every i, t in [0, 1]
  double t_lo = 0.0;
  double t_hi = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = z[i] - y[i];
    const double r = x[i] - y[i];
    if (d > 0.0) {
      t_hi = std::min(t_hi, r / d);
    } else if (d < 0.0) {
      t_lo = std::max(t_lo, r / d);
    } else if (r < 0.0) {
      return false;
    }
  }
  return t_lo <= t_hi;
}

double hull_induced_value(const Position& z, const Position& y, const Position& x) {
  if (z.size() != y.size() || z.size() != x.size()) {
    throw ConfigError("hull induced value: dimension mismatch");
  }
  const std::size_t n = x.size();
  auto envelope = [&](double t) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, t * z[i] + (1.0 - t) * y[i] - x[i]);
    return best;
  };
  // Piece i is a_i + t d_i. The convex envelope attains its minimum over
  // [0, 1] at an endpoint or where two pieces cross.
  double best = std::min(envelope(0.0), envelope(1.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = y[i] - x[i];
    const double di = z[i] - y[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double aj = y[j] - x[j];
      const double dj = z[j] - y[j];
      if (di == dj) continue;
      const double t = (aj - ai) / (di - dj);
      if (t > 0.0 && t < 1.0) best = std::min(best, envelope(t));
    }
  }
  return best;
}

bool AcceptanceSet::contains(const Position& x) const {
  const Data& d = *data_;
  d.space.check(x);
  switch (d.kind) {
    case Kind::from_measure:
      return (*d.measure)(x) <= 0.0;
    case Kind::orthant:
      return dominates(x, d.z);
    case Kind::hull:
      return hull_contains(d.z, d.y, x);
    case Kind::union_of:
      return std::any_of(d.members.begin(), d.members.end(),
                         [&](const AcceptanceSet& s) { return s.contains(x); });
    case Kind::intersection_of:
      return std::all_of(d.members.begin(), d.members.end(),
                         [&](const AcceptanceSet& s) { return s.contains(x); });
  }
  return false;
}

AcceptanceSet::Kind AcceptanceSet::kind() const { return data_->kind; }
const ProbSpace& AcceptanceSet::space() const { return data_->space; }

std::string AcceptanceSet::describe() const {
  const Data& d = *data_;
  switch (d.kind) {
    case Kind::from_measure: return "A[" + d.measure->label() + "]";
    case Kind::orthant: return "orthant";
    case Kind::hull: return "hull";
    case Kind::union_of: return "union(" + join_descriptions(d.members) + ")";
    case Kind::intersection_of: return "intersection(" + join_descriptions(d.members) + ")";
  }
  return "?";
}

std::optional<double> AcceptanceSet::closed_form(const Position& x) const {
  const Data& d = *data_;
  d.space.check(x);
  switch (d.kind) {
    case Kind::from_measure:
      return std::nullopt;
    case Kind::orthant: {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, d.z[i] - x[i]);
      return best;
    }
    case Kind::hull:
      return hull_induced_value(d.z, d.y, x);
    case Kind::union_of:
    case Kind::intersection_of: {
      // Monotone members: the union's infimum is the least member infimum, the
      // intersection's the greatest.
      std::optional<double> acc;
      for (const auto& s : d.members) {
        const auto v = s.closed_form(x);
        if (!v) return std::nullopt;
        if (!acc) acc = *v;
        else acc = d.kind == Kind::union_of ? std::min(*acc, *v) : std::max(*acc, *v);
      }
      return acc;
    }
  }
  return std::nullopt;
}

std::variant<Bracket, InducedValue::Kind> find_bracket(const AcceptanceSet& a, const Position& x) {
  if (a.contains(x)) {
    double hi = 0.0;
    for (double m = -1.0; -m <= kBracketCap; m *= 2.0) {
      if (!a.contains(x + m)) return Bracket{m, hi};
      hi = m;
    }
    return InducedValue::Kind::minus_infinity;
  }
  double lo = 0.0;
  for (double m = 1.0; m <= kBracketCap; m *= 2.0) {
    if (a.contains(x + m)) return Bracket{lo, m};
    lo = m;
  }
  return InducedValue::Kind::plus_infinity;
}

InducedValue induced_measure(const AcceptanceSet& a, const Position& x, double tol) {
  if (!(tol > 0.0)) throw ConfigError("bisection tolerance must be positive");
  if (const auto v = a.closed_form(x)) return {InducedValue::Kind::finite, *v};
  const auto bracket = find_bracket(a, x);
  if (const auto* kind = std::get_if<InducedValue::Kind>(&bracket)) return {*kind, 0.0};
  auto [lo, hi] = std::get<Bracket>(bracket);
  for (int step = 0; step < kMaxBisectionSteps && hi - lo > tol; ++step) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (a.contains(x + mid)) hi = mid;
    else lo = mid;
  }
  return {InducedValue::Kind::finite, hi};
}

RiskFunctional induced_functional(const AcceptanceSet& a, double tol, std::string label) {
  if (label.empty()) label = "induced(" + a.describe() + ")";
  return RiskFunctional::custom(a.space(), label, [a, tol, label](const Position& x) {
    const InducedValue v = induced_measure(a, x, tol);
    if (!v.finite()) {
      throw NumericalError(label + ": induced value is " +
                           (v.kind == InducedValue::Kind::plus_infinity ? "+inf" : "-inf") +
                           " (no bracket within the cap)");
    }
    return v.value;
  });
}

std::vector<double> default_set_lambdas() {
  return {1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0, 1.0 / 2.0, 3.0 / 4.0, 15.0 / 16.0};
}

double set_witness_margin(const AcceptanceSet& a, Property property, const Witness& w) {
  if (w.positions.size() < 2 || w.scalars.empty()) {
    throw ConfigError("set witness needs two positions and one scalar");
  }
  const Position& x = w.positions[0];
  const Position& other = w.positions[1];
  const double t = w.scalars[0];
  if (!a.contains(x)) return std::numeric_limits<double>::lowest();
  if (property == Property::convexity && !a.contains(other)) {
    return std::numeric_limits<double>::lowest();
  }
  const Position mix = combine(t, x, 1.0 - t, other);
  if (a.contains(mix)) return 0.0;
  const InducedValue v = induced_measure(a, mix);
  if (v.kind == InducedValue::Kind::plus_infinity) return kBracketCap;
  return v.finite() ? v.value : 0.0;
}

namespace {

std::optional<Position> draw_member(const AcceptanceSet& a, const SamplerConfig& sampler,
                                    std::size_t index, Stream stream, std::size_t budget) {
  CounterRng rng(sampler.seed, static_cast<std::uint64_t>(stream), index);
  const std::size_t n = a.space().size();
  std::vector<double> values(n);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    for (double& v : values) v = rng.uniform(sampler.lo, sampler.hi);
    Position candidate(values);
    if (a.contains(candidate)) return candidate;
  }
  return std::nullopt;
}

Witness shrink_set_witness(const AcceptanceSet& a, Property property, Witness w, double tol,
                           bool shrink_second) {
  auto still_fails = [&](const Witness& c) { return set_witness_margin(a, property, c) > tol; };
  for (int round = 0; round < kSetShrinkRounds; ++round) {
    bool changed = false;
    const std::size_t movable = shrink_second ? 2 : 1;
    for (std::size_t p = 0; p < movable; ++p) {
      for (std::size_t i = 0; i < w.positions[p].size(); ++i) {
        const double current = w.positions[p][i];
        for (double candidate : {0.0, std::round(current), std::round(2.0 * current) / 2.0}) {
          if (candidate == current) break;
          Witness trial = w;
          std::vector<double> values = trial.positions[p].vec();
          values[i] = candidate;
          trial.positions[p] = Position(std::move(values));
          if (still_fails(trial)) {
            w = std::move(trial);
            changed = true;
            break;
          }
        }
      }
    }
    for (double candidate : {0.5, 0.25, 0.75}) {
      if (candidate == w.scalars[0]) break;
      Witness trial = w;
      trial.scalars[0] = candidate;
      if (still_fails(trial)) {
        w = std::move(trial);
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
  w.margin = set_witness_margin(a, property, w);
  return w;
}

}  // namespace

PropertyReport is_star_shaped_at(const AcceptanceSet& a, const Position& v,
                                 const SamplerConfig& sampler, const std::vector<double>& lambdas,
                                 const SetCheckOptions& options) {
  sampler.validate();
  a.space().check(v);
  for (double t : lambdas) {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("star-shapedness lambdas must lie in (0, 1)");
  }
  PropertyReport report;
  report.property = Property::star_shapedness;
  report.tol = 0.0;
  report.seed = sampler.seed;
  for (std::size_t i = 0; i < sampler.count; ++i) {
    const auto x = draw_member(a, sampler, i, Stream::member, options.member_budget);
    if (!x) {
      report.verdict = Verdict::inconclusive;
      report.samples = i;
      report.note = "no member found within the rejection budget";
      return report;
    }
    std::vector<double> grid = lambdas;
    CounterRng rng(sampler.seed, static_cast<std::uint64_t>(Stream::scalar), i);
    for (std::size_t k = 0; k < options.random_lambdas; ++k) {
      double t = rng.uniform();
      if (t == 0.0) t = 0.5;
      grid.push_back(t);
    }
    for (double t : grid) {
      if (!a.contains(combine(t, *x, 1.0 - t, v))) {
        report.verdict = Verdict::fail;
        report.samples = i + 1;
        report.witness = shrink_set_witness(a, Property::star_shapedness, Witness{{*x, v}, {t}, 0.0},
                                            0.0, false);
        return report;
      }
    }
  }
  report.verdict = Verdict::pass;
  report.samples = sampler.count;
  return report;
}

PropertyReport is_convex_sampled(const AcceptanceSet& a, const SamplerConfig& sampler,
                                 const SetCheckOptions& options) {
  sampler.validate();
  PropertyReport report;
  report.property = Property::convexity;
  report.tol = 0.0;
  report.seed = sampler.seed;
  const std::vector<double> weights =
      sampler.weights.empty() ? default_convex_weights() : sampler.weights;
  for (std::size_t i = 0; i < sampler.count; ++i) {
    const auto x = draw_member(a, sampler, i, Stream::member, options.member_budget);
    const auto y = draw_member(a, sampler, i, Stream::family, options.member_budget);
    if (!x || !y) {
      report.verdict = Verdict::inconclusive;
      report.samples = i;
      report.note = "no member found within the rejection budget";
      return report;
    }
    std::vector<double> grid = weights;
    CounterRng rng(sampler.seed, static_cast<std::uint64_t>(Stream::scalar), i);
    for (std::size_t k = 0; k < options.random_lambdas; ++k) grid.push_back(rng.uniform());
    for (double t : grid) {
      if (!a.contains(combine(t, *x, 1.0 - t, *y))) {
        report.verdict = Verdict::fail;
        report.samples = i + 1;
        report.witness =
            shrink_set_witness(a, Property::convexity, Witness{{*x, *y}, {t}, 0.0}, 0.0, true);
        return report;
      }
    }
  }
  report.verdict = Verdict::pass;
  report.samples = sampler.count;
  return report;
}

}  // namespace risklab
