#include "risklab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "risklab/acceptance.hpp"
#include "risklab/axioms.hpp"
#include "risklab/config.hpp"
#include "risklab/counterexamples.hpp"
#include "risklab/error.hpp"
#include "risklab/oracles.hpp"
#include "risklab/report.hpp"
#include "risklab/representation.hpp"
#include "risklab/svg.hpp"

namespace risklab::cli {

namespace {

using config::Json;
using config::Registry;
using config::join;

constexpr std::size_t kDefaultSamples = 10000;
constexpr std::size_t kDefaultMaxRecords = 20;

struct Options {
  std::string command;
  std::string config_path;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string report_path;
  bool timing = false;
  std::string c;
  std::string out_path;
  std::string vertices_path;
  std::string verify_path;
};

struct Run {
  const Options& opt;
  std::ostream& out;
  Json doc;
  SamplerConfig sampler;
  double tol = 0.0;
};

std::size_t env_samples() {
  const char* raw = std::getenv(kSamplesEnv);
  if (!raw || !*raw) return kDefaultSamples;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(raw, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || raw[pos] != '\0' || v == 0) {
    throw ConfigError(std::string(kSamplesEnv) + ": expected a positive integer, got '" + raw + "'");
  }
  return static_cast<std::size_t>(v);
}

const Json* section(const Json& doc, const char* key) {
  if (!doc.contains(key)) return nullptr;
  if (!doc[key].is_object()) throw ConfigError(std::string(key) + ": expected an object");
  return &doc[key];
}

std::size_t count_field(const Json& node, const std::string& path) {
  if (!node.is_number_integer() || node.get<long long>() < 1) {
    throw ConfigError(path + ": expected a positive integer");
  }
  return node.get<std::size_t>();
}

// Flag, then config "sampler" section, then the environment, then defaults.
Run make_run(const Options& opt, std::ostream& out, Json doc, double default_tol) {
  Run run{opt, out, std::move(doc), {}, default_tol};
  run.sampler = config::parse_sampler(run.doc);
  const Json* s = section(run.doc, "sampler");
  run.sampler.count = env_samples();
  if (s && s->contains("samples")) run.sampler.count = count_field((*s)["samples"], "sampler.samples");
  if (opt.samples) run.sampler.count = *opt.samples;
  if (s && s->contains("seed")) {
    const Json& seed = (*s)["seed"];
    if (!seed.is_number_unsigned()) throw ConfigError("sampler.seed: expected a nonnegative integer");
    run.sampler.seed = seed.get<std::uint64_t>();
  }
  if (opt.seed) run.sampler.seed = *opt.seed;
  if (s && s->contains("tol")) run.tol = config::number((*s)["tol"], "sampler.tol");
  if (opt.tol) run.tol = *opt.tol;
  if (!(run.tol >= 0.0)) throw ConfigError("tol: must be nonnegative");
  run.sampler.validate();
  return run;
}

Json base_report(const Run& run) {
  return report::envelope({run.opt.command, run.sampler.seed, run.sampler.count, run.tol}, run.doc);
}

std::vector<Json> refs_or_all(const Registry& reg, const Json* sec, const char* key,
                              const std::string& path) {
  std::vector<Json> refs;
  if (sec && sec->contains(key)) {
    const Json& list = (*sec)[key];
    if (!list.is_array()) throw ConfigError(join(path, key) + ": expected an array");
    for (const auto& r : list) refs.push_back(r);
  } else {
    for (const auto& name : reg.measure_names()) refs.emplace_back(name);
  }
  if (refs.empty()) throw ConfigError(join(path, key) + ": no measures to process");
  return refs;
}

std::string short_name(Property p) {
  switch (p) {
    case Property::monotonicity: return "mono";
    case Property::cash_invariance: return "cash";
    case Property::normalization: return "norm";
    case Property::convexity: return "conv";
    case Property::positive_homogeneity: return "homog";
    case Property::star_shapedness: return "star";
  }
  return "?";
}

std::string class_name(const Classification& c) {
  if (c.coherent) return "coherent";
  if (c.convex) return "convex";
  if (c.star_shaped) return "star-shaped";
  if (c.monetary) return "monetary";
  return "not monetary";
}

// ---------------------------------------------------------------------------

Json cmd_audit(Run& run) {
  Registry reg(run.doc);
  const Json* sec = section(run.doc, "audit");
  const std::vector<Json> refs = refs_or_all(reg, sec, "measures", "audit");

  std::optional<oracles::LatticeBox> box;
  std::vector<Property> lattice_props;
  if (sec && sec->contains("lattice")) {
    const Json& l = (*sec)["lattice"];
    const std::string p = "audit.lattice";
    box = oracles::LatticeBox{};
    if (l.contains("box")) {
      const auto b = config::numbers(l["box"], join(p, "box"));
      if (b.size() != 2 || !(b[0] <= b[1])) throw ConfigError(p + ".box: expected [lo, hi]");
      box->lo = b[0];
      box->hi = b[1];
    }
    if (l.contains("step")) box->step = config::number(l["step"], join(p, "step"));
    if (!(box->step > 0)) throw ConfigError(p + ".step: must be positive");
    if (l.contains("properties")) {
      const Json& ps = l["properties"];
      if (!ps.is_array()) throw ConfigError(p + ".properties: expected an array");
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto prop = property_from_string(config::string(ps[i], join(join(p, "properties"), i)));
        if (!prop) throw ConfigError(join(join(p, "properties"), i) + ": unknown property");
        lattice_props.push_back(*prop);
      }
    } else {
      lattice_props.assign(kAllProperties.begin(), kAllProperties.end());
    }
  }

  Json report = base_report(run);
  Json results = Json::array();
  run.out << std::left << std::setw(24) << "measure";
  for (Property p : kAllProperties) run.out << std::setw(7) << short_name(p);
  run.out << "class\n";
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const RiskFunctional m = reg.measure(refs[i], join(std::string("audit.measures"), i));
    AuditResult audit = full_audit(m, run.sampler, run.tol);
    if (box) {
      for (Property p : lattice_props) {
        PropertyReport& r = audit.reports[static_cast<std::size_t>(p)];
        if (r.verdict == Verdict::fail) continue;
        if (auto w = oracles::lattice_counterexample(m, p, *box, run.tol)) {
          r.verdict = Verdict::fail;
          r.witness = std::move(*w);
          std::ostringstream note;
          note << "lattice search over [" << box->lo << ", " << box->hi << "]^n, step " << box->step;
          r.note = note.str();
        }
      }
      audit.classification = classify(audit.reports);
    }
    Json entry;
    entry["measure"] = refs[i];
    entry["label"] = m.label();
    entry.update(report::audit_json(audit, refs[i]));
    results.push_back(std::move(entry));

    run.out << std::setw(24) << (refs[i].is_string() ? refs[i].get<std::string>() : m.label());
    for (const auto& r : audit.reports) run.out << std::setw(7) << to_string(r.verdict);
    run.out << class_name(audit.classification) << '\n';
  }
  report["results"] = std::move(results);
  return report;
}

// ---------------------------------------------------------------------------

double parse_c(const std::string& raw, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != raw.size() || !std::isfinite(v)) {
    throw ConfigError(what + ": expected 'auto' or a number, got '" + raw + "'");
  }
  return v;
}

std::vector<double> translation_cs(const Run& run, const Json* sec, double c_star) {
  if (!run.opt.c.empty()) {
    return {run.opt.c == "auto" ? c_star : parse_c(run.opt.c, "--c")};
  }
  if (!sec || !sec->contains("c")) return {c_star};
  const Json& c = (*sec)["c"];
  auto one = [&](const Json& node, const std::string& path) {
    if (node.is_string()) {
      if (node.get<std::string>() != "auto") throw ConfigError(path + ": expected 'auto' or a number");
      return c_star;
    }
    return config::number(node, path);
  };
  if (!c.is_array()) return {one(c, "translate.c")};
  std::vector<double> cs;
  for (std::size_t i = 0; i < c.size(); ++i) cs.push_back(one(c[i], join(std::string("translate.c"), i)));
  if (cs.empty()) throw ConfigError("translate.c: empty list");
  return cs;
}

Json translate_block(const Run& run, const MeasureFamily& fam, const Json& fam_ref,
                     const std::vector<double>& cs) {
  const TranslationBound bound = translation_bound(fam);
  const double min_at_zero = eval_min(fam, Position::zeros(fam.space().size())).value;
  Json j;
  j["family"] = fam_ref;
  j["c_star"] = bound.c_star;
  j["c_star_member"] = bound.argmax;
  j["min_at_zero"] = min_at_zero;
  j["diverging"] = bound.diverging;
  Json results = Json::array();
  for (double c : cs) {
    const RepresentationReport r = translate_check(fam, c, run.sampler, run.tol);
    const Json subject = {{"type", "translate"},
                          {"by", -c},
                          {"of", {{"type", "min_of"}, {"family", fam_ref}}}};
    Json rj;
    rj["c"] = c;
    rj.update(report::representation_json(r, subject, 0));
    rj.erase("records");
    rj.erase("records_total");
    results.push_back(std::move(rj));
    run.out << "c = " << std::setprecision(10) << c << "  (c* = " << bound.c_star
            << ")  star-shaped: " << to_string(r.verdict) << "  " << r.note << '\n';
  }
  j["results"] = std::move(results);
  return j;
}

Json cmd_translate(Run& run) {
  Registry reg(run.doc);
  const Json* sec = section(run.doc, "translate");
  if (!sec) throw ConfigError("translate: missing section");
  const Json& fam_ref = config::require(*sec, "family", "translate");
  const MeasureFamily fam = reg.family(fam_ref, "translate.family");
  const std::vector<double> cs = translation_cs(run, sec, translation_bound(fam).c_star);
  Json report = base_report(run);
  report["results"] = translate_block(run, fam, fam_ref, cs);
  return report;
}

// ---------------------------------------------------------------------------

Json cmd_represent(Run& run) {
  Registry reg(run.doc);
  const Json* sec = section(run.doc, "represent");
  if (!sec) throw ConfigError("represent: missing section");
  const std::string engine_name =
      config::string(config::require(*sec, "engine", "represent"), "represent.engine");
  const auto engine = engine_from_string(engine_name);
  if (!engine) throw ConfigError("represent.engine: unknown engine '" + engine_name + "'");
  const bool tol_given = run.opt.tol || (section(run.doc, "sampler") && run.doc["sampler"].contains("tol"));
  if (!tol_given && *engine == Engine::translate_check) run.tol = kDefaultPropertyTol;
  const std::size_t max_records = sec->contains("max_records")
                                      ? count_field((*sec)["max_records"], "represent.max_records")
                                      : kDefaultMaxRecords;
  Json report = base_report(run);
  report["run"]["tol"] = run.tol;
  Json results = Json::array();

  auto family = [&]() -> std::pair<MeasureFamily, Json> {
    const Json& ref = config::require(*sec, "family", "represent");
    return {reg.family(ref, "represent.family"), ref};
  };

  switch (*engine) {
    case Engine::jia_orthant:
    case Engine::star_hull: {
      const std::vector<Json> refs = refs_or_all(reg, sec, "measures", "represent");
      for (std::size_t i = 0; i < refs.size(); ++i) {
        const RiskFunctional m = reg.measure(refs[i], join(std::string("represent.measures"), i));
        RepresentationReport r;
        if (*engine == Engine::jia_orthant) {
          JiaOptions o;
          if (sec->contains("dominating")) o.dominating = count_field((*sec)["dominating"], "represent.dominating");
          o.audit_samples = std::min(o.audit_samples, run.sampler.count);
          try {
            r = jia_check(m, run.sampler, run.tol, o);
          } catch (const ConfigError& e) {
            throw ConfigError(join(std::string("represent.measures"), i) + ": " + e.what());
          }
        } else {
          const Position y = sec->contains("y") ? config::position((*sec)["y"], "represent.y")
                                                : Position::zeros(reg.space().size());
          const std::size_t members = sec->contains("members")
                                          ? count_field((*sec)["members"], "represent.members")
                                          : 20;
          try {
            r = star_hull_check(m, y, run.sampler, run.tol, members);
          } catch (const ConfigError& e) {
            throw ConfigError("represent: " + std::string(e.what()));
          }
        }
        Json rj;
        rj["measure"] = refs[i];
        rj.update(report::representation_json(r, refs[i], max_records));
        double worst = 0.0;
        for (const auto& rec : r.records) worst = std::max(worst, std::abs(rec.min_value - rec.rho));
        rj["max_attainment_error"] = worst;
        run.out << std::left << std::setw(24)
                << (refs[i].is_string() ? refs[i].get<std::string>() : m.label()) << engine_name
                << ": " << to_string(r.verdict) << "  max |min - rho| = " << worst << '\n';
        results.push_back(std::move(rj));
      }
      break;
    }
    case Engine::star_member: {
      auto [fam, ref] = family();
      const PropertyReport r = star_member_exists(fam, run.tol);
      Json rj = report::property_json(r, ref);
      rj["engine"] = engine_name;
      rj["family"] = ref;
      run.out << "star_member: " << to_string(r.verdict) << "  " << r.note << '\n';
      results.push_back(std::move(rj));
      break;
    }
    case Engine::intersection_probe: {
      auto [fam, ref] = family();
      const RepresentationReport r = intersection_probe(fam, run.tol);
      Json rj = report::representation_json(r, ref, 0);
      rj["family"] = ref;
      run.out << "intersection_probe: " << to_string(r.verdict) << "  " << r.note << '\n';
      results.push_back(std::move(rj));
      break;
    }
    case Engine::translate_check: {
      auto [fam, ref] = family();
      results.push_back(translate_block(run, fam, ref, translation_cs(run, sec, translation_bound(fam).c_star)));
      break;
    }
  }
  report["results"] = std::move(results);
  return report;
}

// ---------------------------------------------------------------------------

Json default_examples_doc() {
  std::vector<double> ks;
  for (int k = -10; k <= 10; ++k) ks.push_back(k);
  Json doc;
  doc["space"] = {{"uniform", 2}};
  doc["measures"] = {{"neg_expectation", {{"type", "neg_expectation"}}}};
  doc["examples"] = {
      {"example1", {{"base", "neg_expectation"}, {"epsilons", {0.5, 1.0, 2.0}}, {"ks", {1.5, 2.0, 4.0}}}},
      {"example2", {{"base", "neg_expectation"}, {"ks", ks}}}};
  return doc;
}

Json cmd_examples(Run& run) {
  Registry reg(run.doc);
  const Json* sec = section(run.doc, "examples");
  if (!sec) throw ConfigError("examples: missing section");
  Json report = base_report(run);
  Json results = Json::array();
  if (sec->contains("example1")) {
    const std::string p = "examples.example1";
    const Json& e = (*sec)["example1"];
    const Json& base_ref = config::require(e, "base", p);
    const RiskFunctional base = reg.measure(base_ref, join(p, "base"));
    const std::vector<double> eps = e.contains("epsilons") ? config::numbers(e["epsilons"], join(p, "epsilons"))
                                                           : std::vector<double>{1.0};
    const std::vector<double> ks = config::numbers(config::require(e, "ks", p), join(p, "ks"));
    for (std::size_t i = 0; i < eps.size(); ++i) {
      Example1Report r;
      try {
        r = example1(base, eps[i], ks, run.sampler);
      } catch (const ConfigError& err) {
        throw ConfigError(join(join(p, "epsilons"), i) + ": " + err.what());
      }
      for (const auto& row : r.rows) {
        run.out << "example1 eps=" << r.epsilon << " k=" << row.k << "  margin " << row.measured
                << "  formula " << row.formula << "  " << to_string(row.verdict) << '\n';
      }
      results.push_back(report::example1_json(r, base_ref));
    }
  }
  if (sec->contains("example2")) {
    const std::string p = "examples.example2";
    const Json& e = (*sec)["example2"];
    const Json& base_ref = config::require(e, "base", p);
    const RiskFunctional base = reg.measure(base_ref, join(p, "base"));
    const std::vector<double> ks = config::numbers(config::require(e, "ks", p), join(p, "ks"));
    Example2Options o;
    if (e.contains("depth")) o.max_depth = static_cast<int>(count_field(e["depth"], join(p, "depth")));
    if (e.contains("bisection_tol")) o.bisection_tol = config::number(e["bisection_tol"], join(p, "bisection_tol"));
    if (e.contains("strict_tol")) o.strict_tol = config::number(e["strict_tol"], join(p, "strict_tol"));
    const Example2Report r = example2_sweep(base, ks, o);
    for (const auto& row : r.rows) {
      run.out << "example2 k=" << row.k;
      if (row.raw) run.out << "  raw j=" << row.raw->depth << " ratio " << row.raw_ratio;
      if (row.induced) run.out << "  induced j=" << row.induced->depth << " margin " << row.induced->margin;
      run.out << "  " << to_string(row.verdict) << '\n';
    }
    results.push_back(report::example2_json(r, base_ref));
  }
  if (results.empty()) throw ConfigError("examples: declare example1 and/or example2");
  report["results"] = std::move(results);
  return report;
}

// ---------------------------------------------------------------------------

Json default_figure_doc() {
  Json doc;
  doc["space"] = {{"uniform", 2}};
  doc["figure"] = {{"scenarios", default_figure_scenarios()}};
  return doc;
}

Json cmd_figure(Run& run) {
  Registry reg(run.doc);
  const Json* sec = section(run.doc, "figure");
  RiskFunctional coherent = RiskFunctional::scenario_max(reg.space(), default_figure_scenarios());
  Window window;
  double pitch = 0.05;
  if (sec) {
    if (sec->contains("measure") && sec->contains("scenarios")) {
      throw ConfigError("figure: declare at most one of 'measure' or 'scenarios'");
    }
    if (sec->contains("measure")) coherent = reg.measure((*sec)["measure"], "figure.measure");
    if (sec->contains("scenarios")) {
      coherent = reg.measure(Json{{"type", "scenario_max"}, {"scenarios", (*sec)["scenarios"]}}, "figure");
    }
    if (sec->contains("window")) {
      const Json& w = (*sec)["window"];
      const auto xs = config::numbers(config::require(w, "x", "figure.window"), "figure.window.x");
      const auto ys = config::numbers(config::require(w, "y", "figure.window"), "figure.window.y");
      if (xs.size() != 2 || ys.size() != 2) throw ConfigError("figure.window: expected x and y as [lo, hi]");
      window = {xs[0], xs[1], ys[0], ys[1]};
    }
    if (sec->contains("pitch")) pitch = config::number((*sec)["pitch"], "figure.pitch");
  }
  const FigureData fig = figure_data(coherent, window);
  const GridAgreement g = staircase_agreement(fig, coherent, pitch);

  Json report = base_report(run);
  Json fj = report::figure_json(fig);
  fj["agreement"] = {{"pitch", pitch},
                     {"checked", g.checked},
                     {"skipped", g.skipped},
                     {"mismatches", g.mismatches}};
  if (g.first_mismatch) fj["agreement"]["first_mismatch"] = {g.first_mismatch->x, g.first_mismatch->y};
  fj["verdict"] = g.mismatches == 0 ? "pass" : "fail";
  report["results"] = std::move(fj);

  if (!run.opt.out_path.empty()) svg::write_text(svg::render(fig), run.opt.out_path);
  if (!run.opt.vertices_path.empty()) svg::write_text(svg::vertex_list(fig), run.opt.vertices_path);
  run.out << svg::vertex_list(fig) << "staircase vs floor oracle: " << g.checked << " grid points, "
          << g.mismatches << " mismatches\n";
  return report;
}

// ---------------------------------------------------------------------------

struct Recheck {
  double recomputed = 0.0;
  bool genuine = false;
};

std::vector<Position> positions_of(const Json& w, const std::string& path) {
  const Json& ps = config::require(w, "positions", path);
  if (!ps.is_array()) throw ConfigError(path + ".positions: expected an array");
  std::vector<Position> out;
  for (std::size_t i = 0; i < ps.size(); ++i) out.push_back(config::position(ps[i], join(path + ".positions", i)));
  return out;
}

Recheck recheck(const Registry& reg, const Json& w, const std::string& path) {
  const std::string kind = config::string(config::require(w, "witness_kind", path), path + ".witness_kind");
  const Json& subject = config::require(w, "subject", path);
  Witness witness;
  witness.positions = positions_of(w, path);
  witness.scalars = config::numbers(config::require(w, "scalars", path), path + ".scalars");
  const double tol = config::number(config::require(w, "tol", path), path + ".tol");
  auto need = [&](std::size_t np, std::size_t ns) {
    if (witness.positions.size() < np || witness.scalars.size() < ns) {
      throw ConfigError(path + ": witness payload too short");
    }
  };
  auto property = [&] {
    const std::string name = config::string(config::require(w, "property", path), path + ".property");
    const auto p = property_from_string(name);
    if (!p) throw ConfigError(path + ".property: unknown property '" + name + "'");
    return *p;
  };

  Recheck r;
  if (kind == "property") {
    const RiskFunctional m = reg.measure(subject, path + ".subject");
    for (const auto& x : witness.positions) m.space().check(x);
    r.recomputed = violation_margin(m, property(), witness);
    r.genuine = r.recomputed > tol;
  } else if (kind == "set_property") {
    const AcceptanceSet a = reg.set(subject, path + ".subject");
    r.recomputed = set_witness_margin(a, property(), witness);
    r.genuine = r.recomputed > tol;
  } else if (kind == "representation") {
    const std::string engine = config::string(config::require(w, "engine", path), path + ".engine");
    const std::string check = config::string(config::require(w, "check", path), path + ".check");
    if (engine == "intersection_probe") {
      need(1, 1);
      const MeasureFamily fam = reg.family(subject, path + ".subject");
      const double idx = witness.scalars[0];
      if (idx < 0 || idx >= static_cast<double>(fam.size()) || idx != std::floor(idx)) {
        throw ConfigError(path + ".scalars[0]: not a member index");
      }
      r.recomputed = fam[static_cast<std::size_t>(idx)](witness.positions[0]);
      r.genuine = r.recomputed > 0.0;
      return r;
    }
    const RiskFunctional m = reg.measure(subject, path + ".subject");
    const bool hull = engine == "star_hull";
    if (!hull && engine != "jia_orthant") throw ConfigError(path + ".engine: unknown engine '" + engine + "'");
    need(hull ? 3 : 2, 1);
    const Position& x = witness.positions[0];
    const Position& z = witness.positions[1];
    const double value = hull ? hull_induced_value(z, witness.positions[2], x) : orthant_member(m.space(), z)(x);
    if (check == "attainment") {
      r.recomputed = std::abs(value - m(x));
    } else if (check == "domination") {
      r.recomputed = m(x) - value;
    } else if (check == "normalization" && hull) {
      r.recomputed = value;
    } else {
      throw ConfigError(path + ".check: unknown check '" + check + "'");
    }
    r.genuine = r.recomputed > tol;
  } else {
    throw ConfigError(path + ".witness_kind: unknown kind '" + kind + "'");
  }
  return r;
}

void collect_witnesses(const Json& node, const std::string& path,
                       std::vector<std::pair<std::string, const Json*>>& out) {
  if (node.is_object()) {
    if (node.contains("witness_kind")) {
      out.emplace_back(path, &node);
      return;
    }
    for (const auto& [key, value] : node.items()) {
      if (key != "config") collect_witnesses(value, join(path, key), out);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) collect_witnesses(node[i], join(path, i), out);
  }
}

Json cmd_verify(const Options& opt, std::ostream& out) {
  const Json source = config::load_file(opt.verify_path);
  if (!source.contains("config")) throw ConfigError(opt.verify_path + ": report has no embedded config");
  const Registry reg(source["config"]);
  std::vector<std::pair<std::string, const Json*>> found;
  collect_witnesses(source, "", found);

  Json report;
  report["tool"] = report::kTool;
  report["version"] = report::kVersion;
  report["command"] = "oracle";
  report["config"] = source["config"];
  report["verified_report"] = {{"command", source.value("command", "")}, {"run", source.value("run", Json::object())}};
  Json checks = Json::array();
  for (const auto& [path, w] : found) {
    const Recheck r = recheck(reg, *w, path);
    const double recorded = config::number(config::require(*w, "margin", path), path + ".margin");
    const bool consistent = std::abs(r.recomputed - recorded) <= 1e-9 * std::max(1.0, std::abs(recorded));
    const bool ok = r.genuine && consistent;
    checks.push_back({{"path", path},
                      {"recorded_margin", recorded},
                      {"recomputed_margin", r.recomputed},
                      {"genuine", r.genuine},
                      {"consistent", consistent},
                      {"verdict", ok ? "pass" : "fail"}});
    out << (ok ? "OK   " : "FAIL ") << path << "  recorded " << std::setprecision(17) << recorded
        << "  recomputed " << r.recomputed << '\n';
  }
  out << found.size() << " witness(es) checked\n";
  report["checks"] = std::move(checks);
  return report;
}

Json cmd_oracle(Run& run) {
  Registry reg(run.doc);
  const Json* sec = section(run.doc, "oracle");
  if (!sec) throw ConfigError("oracle: missing section (or pass --verify report.json)");
  Json report = base_report(run);
  Json values = Json::array();
  run.out << std::setprecision(17);
  if (sec->contains("lattice")) {
    const Json& list = (*sec)["lattice"];
    if (!list.is_array()) throw ConfigError("oracle.lattice: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = join(std::string("oracle.lattice"), i);
      const Json& e = list[i];
      const Json& ref = config::require(e, "measure", p);
      const RiskFunctional m = reg.measure(ref, join(p, "measure"));
      const std::string name = config::string(config::require(e, "property", p), join(p, "property"));
      const auto prop = property_from_string(name);
      if (!prop) throw ConfigError(join(p, "property") + ": unknown property '" + name + "'");
      oracles::LatticeBox box;
      if (e.contains("box")) {
        const auto b = config::numbers(e["box"], join(p, "box"));
        if (b.size() != 2) throw ConfigError(join(p, "box") + ": expected [lo, hi]");
        box.lo = b[0];
        box.hi = b[1];
      }
      if (e.contains("step")) box.step = config::number(e["step"], join(p, "step"));
      if (!(box.step > 0)) throw ConfigError(join(p, "step") + ": must be positive");
      const auto w = oracles::lattice_counterexample(m, *prop, box, run.tol);
      Json v = {{"oracle", "lattice"}, {"measure", ref}, {"property", name}};
      if (w) {
        v["witness"] = report::witness_json("property", ref, *w, run.tol, *prop);
        run.out << "lattice " << name << ": witness margin " << w->margin << '\n';
      } else {
        v["witness"] = nullptr;
        run.out << "lattice " << name << ": none\n";
      }
      values.push_back(std::move(v));
    }
  }
  if (sec->contains("induced")) {
    const Json& list = (*sec)["induced"];
    if (!list.is_array()) throw ConfigError("oracle.induced: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = join(std::string("oracle.induced"), i);
      const Json& e = list[i];
      const AcceptanceSet a = reg.set(config::require(e, "set", p), join(p, "set"));
      const Position x = config::position(config::require(e, "x", p), join(p, "x"));
      reg.space().check(x);
      std::vector<double> range{-10.0, 10.0};
      if (e.contains("range")) range = config::numbers(e["range"], join(p, "range"));
      if (range.size() != 2 || !(range[0] < range[1])) throw ConfigError(join(p, "range") + ": expected [lo, hi]");
      const double pitch = e.contains("pitch") ? config::number(e["pitch"], join(p, "pitch")) : 1e-3;
      if (!(pitch > 0)) throw ConfigError(join(p, "pitch") + ": must be positive");
      const double value = oracles::grid_induced(a, x, range[0], range[1], pitch);
      values.push_back({{"oracle", "grid_induced"}, {"x", report::position_json(x)}, {"pitch", pitch}, {"value", value}});
      run.out << "grid_induced " << value << '\n';
    }
  }
  report["results"] = std::move(values);
  return report;
}

// ---------------------------------------------------------------------------

int dispatch(const Options& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Json report;
  if (opt.command == "oracle" && !opt.verify_path.empty()) {
    report = cmd_verify(opt, out);
  } else {
    Json doc;
    if (!opt.config_path.empty()) {
      doc = config::load_file(opt.config_path);
    } else if (opt.command == "examples") {
      doc = default_examples_doc();
    } else if (opt.command == "figure") {
      doc = default_figure_doc();
    } else {
      throw ConfigError(opt.command + ": --config is required");
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    const double tol = opt.command == "represent" ? kClosedFormTol : kDefaultPropertyTol;
    Run run = make_run(opt, out, std::move(doc), tol);
    if (opt.command == "audit") report = cmd_audit(run);
    else if (opt.command == "represent") report = cmd_represent(run);
    else if (opt.command == "translate") report = cmd_translate(run);
    else if (opt.command == "examples") report = cmd_examples(run);
    else if (opt.command == "figure") report = cmd_figure(run);
    else report = cmd_oracle(run);
  }
  const bool pass = report::all_pass(report);
  report["verdict"] = pass ? "pass" : "fail";
  if (opt.timing) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report["timing"] = {{"seconds", elapsed.count()}};
  }
  if (!opt.report_path.empty()) report::write(report, opt.report_path);
  out << "verdict: " << (pass ? "pass" : "fail") << '\n';
  return pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audit risk functionals against the monetary axioms, check representation "
               "results and reproduce the counterexamples.",
               "risklab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(report::kVersion));
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON config document");
    sub->add_option_function<std::size_t>("--samples", [&](const std::size_t& v) { opt.samples = v; },
                                           "Sample count (default: $RISKLAB_SAMPLES or 10000)")
        ->check(CLI::PositiveNumber);
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { opt.seed = v; },
                                             "RNG seed (default 42)");
    sub->add_option_function<double>("--tol", [&](const double& v) { opt.tol = v; }, "Tolerance")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--report", opt.report_path, "Write the JSON report here");
    sub->add_flag("--timing", opt.timing, "Record wall time in the report");
  };

  common(app.add_subcommand("audit", "Property matrix of the configured measures"));
  auto* represent = app.add_subcommand("represent", "Representation engines");
  common(represent);
  represent->add_option("--c", opt.c, "Translation for the translate_check engine: auto or a number");
  auto* translate = app.add_subcommand("translate", "Star-shapedness of a family minimum shifted by c");
  common(translate);
  translate->add_option("--c", opt.c, "auto (the translation bound c*) or a number");
  common(app.add_subcommand("examples", "Penalized-family and floor-function counterexamples"));
  auto* figure = app.add_subcommand("figure", "Cone and staircase acceptance sets in two outcomes");
  common(figure);
  figure->add_option("--out", opt.out_path, "SVG output path");
  figure->add_option("--vertices", opt.vertices_path, "Plain vertex-list output path");
  auto* oracle = app.add_subcommand("oracle", "Brute-force values, or re-verify a report's witnesses");
  common(oracle);
  oracle->add_option("--verify", opt.verify_path, "Report whose witnesses to re-verify");

  std::vector<std::string> storage{"risklab"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }
  opt.command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(opt, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Json::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace risklab::cli
