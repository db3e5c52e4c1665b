#include "risklab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <variant>

#include "risklab/error.hpp"

namespace risklab {

namespace {

// Slack on cumulative-probability comparisons against alpha; absorbs the
// round-off left by renormalization.
constexpr double kLevelSlack = 1e-12;

struct NegExpectation {};
struct WorstCase {};
struct ValueAtRisk {
  double alpha;
};
struct ExpectedShortfall {
  double alpha;
};
struct Entropic {
  double theta;
};
struct ScenarioMax {
  std::vector<std::vector<double>> scenarios;
};
struct Translate {
  RiskFunctional inner;
  double by;
};
struct MinOf {
  std::vector<RiskFunctional> members;
};
struct FloorCompose {
  RiskFunctional inner;
};
struct Custom {
  std::function<double(const Position&)> fn;
};

void check_level(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << what << " level alpha = " << alpha << " must lie in (0, 1)";
    throw ConfigError(os.str());
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Distinct values of x in ascending order with their probability masses.
struct Atoms {
  std::vector<double> values;
  std::vector<double> masses;
};

Atoms sorted_atoms(const ProbSpace& space, const Position& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  Atoms atoms;
  for (std::size_t i : order) {
    if (!atoms.values.empty() && atoms.values.back() == x[i]) {
      atoms.masses.back() += space.prob(i);
    } else {
      atoms.values.push_back(x[i]);
      atoms.masses.push_back(space.prob(i));
    }
  }
  return atoms;
}

void check_scenarios(const ProbSpace& space, const std::vector<std::vector<double>>& scenarios) {
  if (scenarios.empty()) throw ConfigError("scenario_max needs at least one scenario");
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    const auto& q = scenarios[s];
    std::ostringstream os;
    os << "scenario " << s << ": ";
    if (q.size() != space.size()) {
      os << "has " << q.size() << " entries, space has " << space.size();
      throw ConfigError(os.str());
    }
    double total = 0.0;
    for (double v : q) {
      if (!std::isfinite(v) || v < 0.0) {
        os << "entries must be nonnegative and finite";
        throw ConfigError(os.str());
      }
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      os << "entries sum to " << total << ", not 1";
      throw ConfigError(os.str());
    }
  }
}

}  // namespace

struct RiskFunctional::Node {
  ProbSpace space;
  std::string label;
  std::variant<NegExpectation, WorstCase, ValueAtRisk, ExpectedShortfall, Entropic, ScenarioMax,
               Translate, MinOf, FloorCompose, Custom>
      body;
};

double var_alpha(const ProbSpace& space, double alpha, const Position& x) {
  check_level(alpha, "VaR");
  space.check(x);
  // Smallest atom v such that the mass strictly below v is <= alpha but the
  // mass up to and including v exceeds alpha; VaR = -v.
  const Atoms atoms = sorted_atoms(space, x);
  double below = 0.0;
  for (std::size_t j = 0; j < atoms.values.size(); ++j) {
    if (below + atoms.masses[j] > alpha + kLevelSlack || j + 1 == atoms.values.size()) {
      return -atoms.values[j];
    }
    below += atoms.masses[j];
  }
  return -atoms.values.back();
}

double es_alpha(const ProbSpace& space, double alpha, const Position& x) {
  check_level(alpha, "ES");
  space.check(x);
  // (1/alpha) * integral_0^alpha VaR_u du, where VaR_u = -v_j on [Q_{j-1}, Q_j).
  const Atoms atoms = sorted_atoms(space, x);
  double covered = 0.0;
  double integral = 0.0;
  for (std::size_t j = 0; j < atoms.values.size() && covered < alpha; ++j) {
    const double take = std::min(atoms.masses[j], alpha - covered);
    integral += take * -atoms.values[j];
    covered += take;
  }
  return integral / alpha;
}

double entropic_value(const ProbSpace& space, double theta, const Position& x) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw ConfigError("entropic theta = " + format_number(theta) + " must be positive");
  }
  space.check(x);
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : x.values()) peak = std::max(peak, -theta * v);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += space.prob(i) * std::exp(-theta * x[i] - peak);
  return (peak + std::log(sum)) / theta;
}

double scenario_max(const ProbSpace& space, const std::vector<std::vector<double>>& scenarios,
                    const Position& x) {
  space.check(x);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& q : scenarios) {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) v -= q[i] * x[i];
    best = std::max(best, v);
  }
  return best;
}

double evaluate_unchecked(const RiskFunctional& m, const Position& x) {
  const RiskFunctional::Node& node = *m.node_;
  const ProbSpace& space = node.space;
  return std::visit(
      [&](const auto& body) -> double {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, NegExpectation>) {
          return -expectation(space, x);
        } else if constexpr (std::is_same_v<T, WorstCase>) {
          return -ess_bounds(space, x).first;
        } else if constexpr (std::is_same_v<T, ValueAtRisk>) {
          return var_alpha(space, body.alpha, x);
        } else if constexpr (std::is_same_v<T, ExpectedShortfall>) {
          return es_alpha(space, body.alpha, x);
        } else if constexpr (std::is_same_v<T, Entropic>) {
          return entropic_value(space, body.theta, x);
        } else if constexpr (std::is_same_v<T, ScenarioMax>) {
          return scenario_max(space, body.scenarios, x);
        } else if constexpr (std::is_same_v<T, Translate>) {
          return evaluate_unchecked(body.inner, x) + body.by;
        } else if constexpr (std::is_same_v<T, MinOf>) {
          double best = evaluate_unchecked(body.members.front(), x);
          for (std::size_t i = 1; i < body.members.size(); ++i) {
            best = std::min(best, evaluate_unchecked(body.members[i], x));
          }
          return best;
        } else if constexpr (std::is_same_v<T, FloorCompose>) {
          return evaluate_unchecked(body.inner, floor(x));
        } else {
          return body.fn(x);
        }
      },
      node.body);
}

RiskFunctional RiskFunctional::neg_expectation(ProbSpace space) {
  return RiskFunctional(std::make_shared<const Node>(Node{std::move(space), "neg_expectation", NegExpectation{}}));
}

RiskFunctional RiskFunctional::worst_case(ProbSpace space) {
  return RiskFunctional(std::make_shared<const Node>(Node{std::move(space), "worst_case", WorstCase{}}));
}

RiskFunctional RiskFunctional::value_at_risk(ProbSpace space, double alpha) {
  check_level(alpha, "VaR");
  return RiskFunctional(std::make_shared<const Node>(
      Node{std::move(space), "var(" + format_number(alpha) + ")", ValueAtRisk{alpha}}));
}

RiskFunctional RiskFunctional::expected_shortfall(ProbSpace space, double alpha) {
  check_level(alpha, "ES");
  return RiskFunctional(std::make_shared<const Node>(
      Node{std::move(space), "es(" + format_number(alpha) + ")", ExpectedShortfall{alpha}}));
}

RiskFunctional RiskFunctional::entropic(ProbSpace space, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw ConfigError("entropic theta = " + format_number(theta) + " must be positive");
  }
  return RiskFunctional(std::make_shared<const Node>(
      Node{std::move(space), "entropic(" + format_number(theta) + ")", Entropic{theta}}));
}

RiskFunctional RiskFunctional::scenario_max(ProbSpace space,
                                            std::vector<std::vector<double>> scenarios) {
  check_scenarios(space, scenarios);
  for (auto& q : scenarios) {
    const double total = std::accumulate(q.begin(), q.end(), 0.0);
    for (double& v : q) v /= total;
  }
  std::string label = "scenario_max[" + std::to_string(scenarios.size()) + "]";
  return RiskFunctional(std::make_shared<const Node>(
      Node{std::move(space), std::move(label), ScenarioMax{std::move(scenarios)}}));
}

RiskFunctional RiskFunctional::custom(ProbSpace space, std::string label,
                                      std::function<double(const Position&)> fn) {
  return RiskFunctional(
      std::make_shared<const Node>(Node{std::move(space), std::move(label), Custom{std::move(fn)}}));
}

double RiskFunctional::operator()(const Position& x) const {
  node_->space.check(x);
  return evaluate_unchecked(*this, x);
}

const ProbSpace& RiskFunctional::space() const { return node_->space; }
const std::string& RiskFunctional::label() const { return node_->label; }

NodeKind RiskFunctional::kind() const {
  return std::visit(
      [](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, NegExpectation>) return NodeKind::neg_expectation;
        else if constexpr (std::is_same_v<T, WorstCase>) return NodeKind::worst_case;
        else if constexpr (std::is_same_v<T, ValueAtRisk>) return NodeKind::value_at_risk;
        else if constexpr (std::is_same_v<T, ExpectedShortfall>) return NodeKind::expected_shortfall;
        else if constexpr (std::is_same_v<T, Entropic>) return NodeKind::entropic;
        else if constexpr (std::is_same_v<T, ScenarioMax>) return NodeKind::scenario_max;
        else if constexpr (std::is_same_v<T, Translate>) return NodeKind::translate;
        else if constexpr (std::is_same_v<T, MinOf>) return NodeKind::min_of;
        else if constexpr (std::is_same_v<T, FloorCompose>) return NodeKind::floor_compose;
        else return NodeKind::custom;
      },
      node_->body);
}

const std::vector<std::vector<double>>* RiskFunctional::scenarios() const {
  if (const auto* s = std::get_if<ScenarioMax>(&node_->body)) return &s->scenarios;
  return nullptr;
}

MeasureFamily::MeasureFamily(std::vector<RiskFunctional> members,
                             std::optional<std::string> generator_tag)
    : members_(std::move(members)), generator_tag_(std::move(generator_tag)) {
  if (members_.empty()) throw ConfigError("measure family must be nonempty");
  for (const auto& m : members_) {
    if (!(m.space() == members_.front().space())) {
      throw ConfigError("family member '" + m.label() + "' lives on a different space");
    }
  }
}

RiskFunctional translate(const RiskFunctional& m, double a) {
  if (!std::isfinite(a)) throw ConfigError("translation amount must be finite");
  std::string label = m.label() + (a < 0 ? " - " : " + ") + format_number(std::abs(a));
  return RiskFunctional(std::make_shared<const RiskFunctional::Node>(
      RiskFunctional::Node{m.space(), std::move(label), Translate{m, a}}));
}

RiskFunctional min_of(const MeasureFamily& family) {
  std::string label = "min{";
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i) label += ", ";
    label += family[i].label();
  }
  label += "}";
  return RiskFunctional(std::make_shared<const RiskFunctional::Node>(
      RiskFunctional::Node{family.space(), std::move(label), MinOf{family.members()}}));
}

MinResult eval_min(const MeasureFamily& family, const Position& x) {
  family.space().check(x);
  MinResult best{family[0](x), 0};
  for (std::size_t i = 1; i < family.size(); ++i) {
    const double v = family[i](x);
    if (v < best.value) best = {v, i};
  }
  return best;
}

MeasureFamily penalized_family(const RiskFunctional& base, const PenaltySpec& spec) {
  if (!(spec.epsilon > 0.0) || !std::isfinite(spec.epsilon)) {
    throw ConfigError("penalty epsilon = " + format_number(spec.epsilon) + " must be positive");
  }
  if (spec.grid.empty()) throw ConfigError("penalty grid must be nonempty");
  if (std::find(spec.grid.begin(), spec.grid.end(), spec.epsilon) == spec.grid.end()) {
    throw ConfigError("penalty grid must contain epsilon = " + format_number(spec.epsilon));
  }
  const double at_zero = base(Position::zeros(base.space().size()));
  if (!(spec.penalty(spec.epsilon) > -at_zero)) {
    std::ostringstream os;
    os << "penalty f(epsilon) = " << spec.penalty(spec.epsilon) << " must exceed -base(0) = "
       << -at_zero;
    throw ConfigError(os.str());
  }
  // Ascending parameter order, so probing walks the index set outward.
  std::vector<double> grid = spec.grid;
  std::sort(grid.begin(), grid.end());
  std::vector<RiskFunctional> members;
  members.reserve(grid.size());
  for (double lambda : grid) {
    if (!std::isfinite(lambda)) throw ConfigError("penalty grid entries must be finite");
    members.push_back(translate(base, spec.penalty(lambda)));
  }
  return MeasureFamily(std::move(members), "penalized");
}

RiskFunctional floor_compose(const RiskFunctional& m) {
  return RiskFunctional(std::make_shared<const RiskFunctional::Node>(
      RiskFunctional::Node{m.space(), "floor_compose(" + m.label() + ")", FloorCompose{m}}));
}

}  // namespace risklab
