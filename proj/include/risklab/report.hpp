#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "risklab/axioms.hpp"
#include "risklab/config.hpp"
#include "risklab/counterexamples.hpp"
#include "risklab/representation.hpp"

// Machine-readable run reports. A report embeds the config it ran from, and
// every witness carries the node it refutes, so `oracle --verify` can rebuild
// the subject and recompute the margin from the report alone.

namespace risklab::report {

using Json = config::Json;

inline constexpr std::string_view kTool = "risklab";
inline constexpr std::string_view kVersion = "0.1.0";

struct RunInfo {
  std::string command;
  std::uint64_t seed = 42;
  std::size_t samples = 0;
  double tol = 0.0;
};

Json envelope(const RunInfo& run, const Json& config_doc);

Json position_json(const Position& x);
Json positions_json(const std::vector<Position>& xs);

/// kind: "property" (subject is a measure reference), "set_property" (subject
/// is an acceptance-set node) or "representation" (engine + w.check).
Json witness_json(std::string_view kind, const Json& subject, const Witness& w, double tol,
                  std::optional<Property> property = std::nullopt,
                  std::optional<Engine> engine = std::nullopt);

Json property_json(const PropertyReport& r, const Json& subject);
Json audit_json(const AuditResult& a, const Json& subject);
Json classification_json(const Classification& c);
/// `subject` is a measure reference, or a family reference for
/// intersection_probe / translate_check.
Json representation_json(const RepresentationReport& r, const Json& subject,
                         std::size_t max_records);

/// Subject node of the example-1 minimum rho_eps.
Json example1_subject(const Json& base_ref, double epsilon, const std::vector<double>& grid);
Json example1_json(const Example1Report& r, const Json& base_ref);
Json example2_json(const Example2Report& r, const Json& base_ref);
Json figure_json(const FigureData& fig);

/// Verdict of a report: pass iff every "verdict" field anywhere in it is "pass".
bool all_pass(const Json& report);

/// Two-space indented JSON with a trailing newline. ConfigError if unwritable.
void write(const Json& report, const std::string& path);

}  // namespace risklab::report
