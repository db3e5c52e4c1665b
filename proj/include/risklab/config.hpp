#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "risklab/acceptance.hpp"
#include "risklab/measures.hpp"
#include "risklab/prob_space.hpp"

namespace risklab::config {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON document; ConfigError on I/O or syntax errors.
Json load_file(const std::string& path);

/// Resolves the measure, family and acceptance-set declarations of a config
/// document. A reference is either the name of a declaration or an inline
/// node. Every error names the offending node by its JSON path.
class Registry {
 public:
  explicit Registry(Json doc);

  const Json& doc() const { return doc_; }
  const ProbSpace& space() const { return space_; }

  RiskFunctional measure(const Json& ref, const std::string& path) const;
  RiskFunctional measure(const std::string& name) const;
  MeasureFamily family(const Json& ref, const std::string& path) const;
  AcceptanceSet set(const Json& node, const std::string& path) const;

  /// Declared measure names, in document order.
  std::vector<std::string> measure_names() const;

 private:
  RiskFunctional build_measure(const Json& node, const std::string& path) const;
  MeasureFamily build_family(const Json& node, const std::string& path) const;

  Json doc_;
  ProbSpace space_;
  mutable std::map<std::string, RiskFunctional> measures_;
  mutable std::vector<std::string> resolving_;
};

ProbSpace parse_space(const Json& node, const std::string& path);

/// Sampler settings from the "sampler" section; seed and count are left at
/// their defaults for the caller to fill in.
SamplerConfig parse_sampler(const Json& doc);

// Typed accessors: throw ConfigError naming `path` on a type mismatch.
const Json& require(const Json& obj, const std::string& key, const std::string& path);
double number(const Json& node, const std::string& path);
std::vector<double> numbers(const Json& node, const std::string& path);
std::string string(const Json& node, const std::string& path);
Position position(const Json& node, const std::string& path);

std::string join(const std::string& path, const std::string& key);
std::string join(const std::string& path, std::size_t index);

}  // namespace risklab::config
