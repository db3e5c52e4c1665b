#include "risklab/report.hpp"

#include <fstream>

#include "risklab/error.hpp"

namespace risklab::report {

Json envelope(const RunInfo& run, const Json& config_doc) {
  Json j;
  j["tool"] = kTool;
  j["version"] = kVersion;
  j["command"] = run.command;
  j["config"] = config_doc;
  j["run"] = {{"seed", run.seed}, {"samples", run.samples}, {"tol", run.tol}};
  return j;
}

Json position_json(const Position& x) { return Json(x.vec()); }

Json positions_json(const std::vector<Position>& xs) {
  Json out = Json::array();
  for (const Position& x : xs) out.push_back(position_json(x));
  return out;
}

Json witness_json(std::string_view kind, const Json& subject, const Witness& w, double tol,
                  std::optional<Property> property, std::optional<Engine> engine) {
  Json j;
  j["witness_kind"] = kind;
  if (property) j["property"] = to_string(*property);
  if (engine) j["engine"] = to_string(*engine);
  if (!w.check.empty()) j["check"] = w.check;
  j["subject"] = subject;
  j["positions"] = positions_json(w.positions);
  j["scalars"] = w.scalars;
  j["margin"] = w.margin;
  j["tol"] = tol;
  return j;
}

Json property_json(const PropertyReport& r, const Json& subject) {
  Json j;
  j["property"] = to_string(r.property);
  j["verdict"] = to_string(r.verdict);
  j["samples"] = r.samples;
  j["tol"] = r.tol;
  j["seed"] = r.seed;
  if (r.index) j["index"] = *r.index;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.witness) j["witness"] = witness_json("property", subject, *r.witness, r.tol, r.property);
  return j;
}

Json classification_json(const Classification& c) {
  return {{"monetary", c.monetary},
          {"convex", c.convex},
          {"coherent", c.coherent},
          {"star_shaped", c.star_shaped},
          {"normalized", c.normalized}};
}

Json audit_json(const AuditResult& a, const Json& subject) {
  Json j;
  j["classification"] = classification_json(a.classification);
  Json props = Json::array();
  for (const auto& r : a.reports) props.push_back(property_json(r, subject));
  j["properties"] = std::move(props);
  return j;
}

Json representation_json(const RepresentationReport& r, const Json& subject,
                         std::size_t max_records) {
  Json j;
  j["engine"] = to_string(r.engine);
  j["verdict"] = to_string(r.verdict);
  j["tol"] = r.tol;
  j["seed"] = r.seed;
  if (r.c_star) j["c_star"] = *r.c_star;
  j["diverging"] = r.diverging;
  if (!r.note.empty()) j["note"] = r.note;
  j["records_total"] = r.records.size();
  Json records = Json::array();
  for (std::size_t i = 0; i < r.records.size() && i < max_records; ++i) {
    const SampleRecord& rec = r.records[i];
    records.push_back({{"x", position_json(rec.x)},
                       {"min_value", rec.min_value},
                       {"argmin", rec.argmin},
                       {"rho", rec.rho}});
  }
  j["records"] = std::move(records);
  Json witnesses = Json::array();
  for (const Witness& w : r.witnesses) {
    if (w.check.empty()) {
      witnesses.push_back(witness_json("property", subject, w, r.tol, Property::star_shapedness));
    } else {
      witnesses.push_back(witness_json("representation", subject, w, r.tol, std::nullopt, r.engine));
    }
  }
  j["witnesses"] = std::move(witnesses);
  if (!r.audits.empty()) {
    Json audits = Json::array();
    for (const auto& a : r.audits) {
      Json aj = property_json(a, subject);
      aj.erase("witness");
      audits.push_back(std::move(aj));
    }
    j["audits"] = std::move(audits);
  }
  return j;
}

Json example1_subject(const Json& base_ref, double epsilon, const std::vector<double>& grid) {
  return {{"type", "min_of"},
          {"family", {{"penalized", {{"of", base_ref}, {"epsilon", epsilon}, {"grid", grid}}}}}};
}

Json example1_json(const Example1Report& r, const Json& base_ref) {
  const Json subject = example1_subject(base_ref, r.epsilon, r.grid);
  Json j;
  j["example"] = "penalized_family";
  j["base"] = base_ref;
  j["epsilon"] = r.epsilon;
  j["grid"] = r.grid;
  j["f_epsilon"] = r.f_epsilon;
  j["base_at_zero"] = r.base_at_zero;
  j["homogeneous_base"] = r.homogeneous_base;
  j["family_min_deviation"] = r.family_min_deviation;
  j["verdict"] = to_string(r.verdict);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json rj;
    rj["k"] = row.k;
    rj["formula"] = row.formula;
    rj["measured"] = row.measured;
    rj["max_deviation"] = row.max_deviation;
    rj["certified_positions"] = row.certified_positions;
    rj["verdict"] = to_string(row.verdict);
    if (row.witness) {
      rj["witness"] =
          witness_json("property", subject, *row.witness, kExampleTol, Property::star_shapedness);
    }
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return j;
}

namespace {

Json sweep_witness_json(const SweepWitness& s, const Json& subject, double tol) {
  Json j = witness_json("property", subject, Witness{{s.x}, {s.lambda}, s.margin}, tol,
                        Property::star_shapedness);
  j["depth"] = s.depth;
  return j;
}

}  // namespace

Json example2_json(const Example2Report& r, const Json& base_ref) {
  const Json floor_node = {{"type", "floor_compose"}, {"of", base_ref}};
  const Json induced_node = {{"type", "induced"}, {"of", floor_node}, {"tol", r.bisection_tol}};
  Json j;
  j["example"] = "floor_translation_sweep";
  j["base"] = base_ref;
  j["base_at_zero"] = r.base_at_zero;
  j["max_depth"] = r.max_depth;
  j["bisection_tol"] = r.bisection_tol;
  j["verdict"] = to_string(r.verdict);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json rj;
    rj["k"] = row.k;
    rj["verdict"] = to_string(row.verdict);
    if (row.raw) {
      const Json subject = {{"type", "translate"}, {"by", row.k}, {"of", floor_node}};
      rj["raw_ratio"] = row.raw_ratio;
      rj["raw"] = sweep_witness_json(*row.raw, subject, r.strict_tol);
    }
    if (row.induced) {
      const Json subject = {{"type", "translate"}, {"by", row.k}, {"of", induced_node}};
      rj["induced"] = sweep_witness_json(*row.induced, subject, r.strict_tol);
    }
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json figure_json(const FigureData& fig) {
  auto poly = [](const std::vector<Point2>& pts) {
    Json out = Json::array();
    for (const Point2& p : pts) out.push_back({p.x, p.y});
    return out;
  };
  Json j;
  j["window"] = {{"x", {fig.window.x_lo, fig.window.x_hi}}, {"y", {fig.window.y_lo, fig.window.y_hi}}};
  j["scenarios"] = fig.scenarios;
  j["cone_boundary"] = poly(fig.cone_boundary);
  j["staircase_boundary"] = poly(fig.staircase_boundary);
  j["cone_region"] = poly(fig.cone_region);
  j["staircase_region"] = poly(fig.staircase_region);
  return j;
}

bool all_pass(const Json& report) {
  if (report.is_object()) {
    for (const auto& [key, value] : report.items()) {
      if (key == "verdict" && value != "pass") return false;
      if (key == "config") continue;
      if (!all_pass(value)) return false;
    }
  } else if (report.is_array()) {
    for (const auto& value : report) {
      if (!all_pass(value)) return false;
    }
  }
  return true;
}

void write(const Json& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write report '" + path + "'");
  out << report.dump(2) << '\n';
  if (!out) throw ConfigError("failed writing report '" + path + "'");
}

}  // namespace risklab::report
