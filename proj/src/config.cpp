#include "risklab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "risklab/error.hpp"

namespace risklab::config {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string join(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

namespace {

// A ConfigError that already names its node.
struct NodeError : ConfigError {
  using ConfigError::ConfigError;
};

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw NodeError((path.empty() ? std::string("config") : path) + ": " + message);
}

// Re-throws errors from the numeric modules with the node path attached.
template <class F>
auto at_node(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const NodeError&) {
    throw;
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
}

}  // namespace

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "missing");
  return *it;
}

double number(const Json& node, const std::string& path) {
  if (!node.is_number()) fail(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

std::vector<double> numbers(const Json& node, const std::string& path) {
  if (!node.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number(node[i], join(path, i)));
  return out;
}

std::string string(const Json& node, const std::string& path) {
  if (!node.is_string()) fail(path, "expected a string");
  return node.get<std::string>();
}

Position position(const Json& node, const std::string& path) {
  return Position(numbers(node, path));
}

ProbSpace parse_space(const Json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object with 'probs' or 'uniform'");
  if (node.contains("probs") == node.contains("uniform")) {
    fail(path, "declare exactly one of 'probs' or 'uniform'");
  }
  if (node.contains("uniform")) {
    const Json& u = node["uniform"];
    if (!u.is_number_integer() || u.get<long long>() < 1) {
      fail(join(path, "uniform"), "expected a positive integer");
    }
    return ProbSpace::uniform(u.get<std::size_t>());
  }
  const std::string p = join(path, "probs");
  return at_node(p, [&] { return ProbSpace(numbers(node["probs"], p)); });
}

SamplerConfig parse_sampler(const Json& doc) {
  SamplerConfig s;
  if (!doc.contains("sampler")) return s;
  const Json& node = doc["sampler"];
  if (!node.is_object()) fail("sampler", "expected an object");
  if (node.contains("lo")) s.lo = number(node["lo"], "sampler.lo");
  if (node.contains("hi")) s.hi = number(node["hi"], "sampler.hi");
  if (node.contains("lambdas")) s.lambdas = numbers(node["lambdas"], "sampler.lambdas");
  if (node.contains("weights")) s.weights = numbers(node["weights"], "sampler.weights");
  at_node("sampler", [&] { s.validate(); });
  return s;
}

Registry::Registry(Json doc)
    : doc_(std::move(doc)), space_(parse_space(require(doc_, "space", ""), "space")) {
  for (const char* section : {"measures", "families"}) {
    if (doc_.contains(section) && !doc_[section].is_object()) {
      fail(section, "expected an object of named declarations");
    }
  }
  if (doc_.contains("measures")) {
    for (const auto& [name, _] : doc_["measures"].items()) measure(name);
  }
  if (doc_.contains("families")) {
    for (const auto& [name, _] : doc_["families"].items()) family(Json(name), "families");
  }
}

std::vector<std::string> Registry::measure_names() const {
  std::vector<std::string> names;
  if (doc_.contains("measures")) {
    for (const auto& [name, _] : doc_["measures"].items()) names.push_back(name);
  }
  return names;
}

RiskFunctional Registry::measure(const std::string& name) const {
  if (auto it = measures_.find(name); it != measures_.end()) return it->second;
  const std::string path = join("measures", name);
  if (!doc_.contains("measures") || !doc_["measures"].contains(name)) {
    fail(path, "no measure named '" + name + "'");
  }
  if (std::find(resolving_.begin(), resolving_.end(), name) != resolving_.end()) {
    fail(path, "circular reference");
  }
  resolving_.push_back(name);
  try {
    RiskFunctional m = build_measure(doc_["measures"][name], path);
    resolving_.pop_back();
    measures_.emplace(name, m);
    return m;
  } catch (...) {
    resolving_.pop_back();
    throw;
  }
}

RiskFunctional Registry::measure(const Json& ref, const std::string& path) const {
  if (ref.is_string()) {
    const std::string name = ref.get<std::string>();
    if (!doc_.contains("measures") || !doc_["measures"].contains(name)) {
      fail(path, "no measure named '" + name + "'");
    }
    return measure(name);
  }
  return build_measure(ref, path);
}

RiskFunctional Registry::build_measure(const Json& node, const std::string& path) const {
  if (!node.is_object()) fail(path, "expected a measure name or an object with 'type'");
  const std::string type = string(require(node, "type", path), join(path, "type"));
  auto param = [&](const char* key) { return number(require(node, key, path), join(path, key)); };

  return at_node(path, [&]() -> RiskFunctional {
    if (type == "neg_expectation") return RiskFunctional::neg_expectation(space_);
    if (type == "worst_case") return RiskFunctional::worst_case(space_);
    if (type == "var") return RiskFunctional::value_at_risk(space_, param("alpha"));
    if (type == "es") return RiskFunctional::expected_shortfall(space_, param("alpha"));
    if (type == "entropic") return RiskFunctional::entropic(space_, param("theta"));
    if (type == "scenario_max") {
      const std::string p = join(path, "scenarios");
      const Json& scen = require(node, "scenarios", path);
      if (!scen.is_array()) fail(p, "expected an array of probability vectors");
      std::vector<std::vector<double>> qs;
      for (std::size_t i = 0; i < scen.size(); ++i) qs.push_back(numbers(scen[i], join(p, i)));
      return RiskFunctional::scenario_max(space_, std::move(qs));
    }
    if (type == "translate") {
      return translate(measure(require(node, "of", path), join(path, "of")), param("by"));
    }
    if (type == "floor_compose") {
      return floor_compose(measure(require(node, "of", path), join(path, "of")));
    }
    if (type == "min_of") {
      if (node.contains("family")) return min_of(family(node["family"], join(path, "family")));
      const std::string p = join(path, "members");
      const Json& ms = require(node, "members", path);
      if (!ms.is_array() || ms.empty()) fail(p, "expected a nonempty array");
      std::vector<RiskFunctional> members;
      for (std::size_t i = 0; i < ms.size(); ++i) members.push_back(measure(ms[i], join(p, i)));
      return min_of(MeasureFamily(std::move(members)));
    }
    if (type == "induced") {
      const double tol = node.contains("tol") ? number(node["tol"], join(path, "tol"))
                                              : kDefaultBisectionTol;
      if (!(tol > 0)) fail(join(path, "tol"), "must be positive");
      if (node.contains("set") == node.contains("of")) {
        fail(path, "declare exactly one of 'of' (a measure) or 'set'");
      }
      const AcceptanceSet a = node.contains("set")
                                  ? set(node["set"], join(path, "set"))
                                  : from_measure(measure(node["of"], join(path, "of")));
      return induced_functional(a, tol, "induced(" + a.describe() + ")");
    }
    fail(join(path, "type"), "unknown measure type '" + type + "'");
  });
}

MeasureFamily Registry::family(const Json& ref, const std::string& path) const {
  if (ref.is_string()) {
    const std::string name = ref.get<std::string>();
    if (!doc_.contains("families") || !doc_["families"].contains(name)) {
      fail(path, "no family named '" + name + "'");
    }
    return build_family(doc_["families"][name], join("families", name));
  }
  return build_family(ref, path);
}

MeasureFamily Registry::build_family(const Json& node, const std::string& path) const {
  if (!node.is_object()) fail(path, "expected a family name or an object");
  if (node.contains("members") == node.contains("penalized")) {
    fail(path, "declare exactly one of 'members' or 'penalized'");
  }
  if (node.contains("members")) {
    const std::string p = join(path, "members");
    const Json& ms = node["members"];
    if (!ms.is_array() || ms.empty()) fail(p, "expected a nonempty array");
    std::vector<RiskFunctional> members;
    for (std::size_t i = 0; i < ms.size(); ++i) members.push_back(measure(ms[i], join(p, i)));
    return MeasureFamily(std::move(members));
  }
  const std::string p = join(path, "penalized");
  const Json& pen = node["penalized"];
  const RiskFunctional base = measure(require(pen, "of", p), join(p, "of"));
  PenaltySpec spec;
  spec.epsilon = number(require(pen, "epsilon", p), join(p, "epsilon"));
  spec.grid = numbers(require(pen, "grid", p), join(p, "grid"));
  return at_node(p, [&] { return penalized_family(base, spec); });
}

AcceptanceSet Registry::set(const Json& node, const std::string& path) const {
  if (!node.is_object()) fail(path, "expected an acceptance set object with 'type'");
  const std::string type = string(require(node, "type", path), join(path, "type"));
  auto point = [&](const char* key) {
    const std::string p = join(path, key);
    Position z = position(require(node, key, path), p);
    at_node(p, [&] { space_.check(z); });
    return z;
  };
  auto members = [&] {
    const std::string p = join(path, "members");
    const Json& ms = require(node, "members", path);
    if (!ms.is_array() || ms.empty()) fail(p, "expected a nonempty array");
    std::vector<AcceptanceSet> sets;
    for (std::size_t i = 0; i < ms.size(); ++i) sets.push_back(set(ms[i], join(p, i)));
    return sets;
  };
  return at_node(path, [&]() -> AcceptanceSet {
    if (type == "measure") return from_measure(measure(require(node, "of", path), join(path, "of")));
    if (type == "orthant") return orthant_at(space_, point("z"));
    if (type == "hull") return hull_of_orthants(space_, point("z"), point("y"));
    if (type == "union") return union_of(members());
    if (type == "intersection") return intersection_of(members());
    fail(join(path, "type"), "unknown acceptance set type '" + type + "'");
  });
}

}  // namespace risklab::config
