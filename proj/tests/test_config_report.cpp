#include <doctest.h>

#include <string>

#include "risklab/config.hpp"
#include "risklab/error.hpp"
#include "risklab/report.hpp"

using namespace risklab;
using config::Json;
using config::Registry;

namespace {

std::string error_of(const Json& doc) {
  try {
    Registry reg(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

Json small_doc() {
  return Json::parse(R"({
    "space": {"probs": [0.1, 0.2, 0.3, 0.4]},
    "measures": {
      "ne": {"type": "neg_expectation"},
      "es": {"type": "es", "alpha": 0.5},
      "shifted": {"type": "translate", "by": 0.5, "of": "es"},
      "low": {"type": "min_of", "members": ["ne", {"type": "worst_case"}]}
    },
    "families": {
      "pair": {"members": ["ne", "shifted"]},
      "pen": {"penalized": {"of": "ne", "epsilon": 1, "grid": [0.5, 1, 2]}}
    }
  })");
}

}  // namespace

TEST_CASE("registry resolves names and inline nodes") {
  const Registry reg(small_doc());
  CHECK(reg.space().size() == 4);
  CHECK(reg.measure_names() == std::vector<std::string>{"ne", "es", "shifted", "low"});
  const Position x{1, -2, 0.5, 3};
  CHECK(reg.measure("shifted")(x) == doctest::Approx(reg.measure("es")(x) + 0.5));
  CHECK(reg.measure("low")(x) == doctest::Approx(reg.measure("ne")(x)));
  const RiskFunctional inline_m = reg.measure(Json{{"type", "var"}, {"alpha", 0.25}}, "probe");
  CHECK(inline_m(x) == var_alpha(reg.space(), 0.25, x));
  CHECK(reg.family(Json("pair"), "f").size() == 2);
  CHECK(reg.family(Json("pen"), "f").lazily_indexed());
  const AcceptanceSet u = reg.set(Json::parse(R"({"type": "union", "members": [
      {"type": "orthant", "z": [0, 0, 0, 0]}, {"type": "measure", "of": "es"}]})"),
                                  "s");
  CHECK(u.contains(Position::zeros(4)));
}

TEST_CASE("config errors name the offending node") {
  Json doc = small_doc();
  doc["measures"]["a"] = {{"type", "translate"}, {"by", 1}, {"of", "missing"}};
  CHECK(error_of(doc) == "measures.a.of: no measure named 'missing'");

  doc = small_doc();
  doc["measures"]["es"]["alpha"] = 1.5;
  CHECK(error_of(doc).rfind("measures.es", 0) == 0);

  doc = small_doc();
  doc["measures"]["x"] = {{"type", "translate"}, {"by", 1}, {"of", "y"}};
  doc["measures"]["y"] = {{"type", "translate"}, {"by", 1}, {"of", "x"}};
  CHECK(error_of(doc).find("circular") != std::string::npos);

  doc = small_doc();
  doc["measures"]["ne"]["type"] = "bogus";
  CHECK(error_of(doc) == "measures.ne.type: unknown measure type 'bogus'");

  doc = small_doc();
  doc["space"] = {{"probs", {0.5, 0.6}}};
  CHECK(error_of(doc).rfind("space.probs", 0) == 0);

  doc = small_doc();
  doc["families"]["pen"]["penalized"]["grid"] = {0.5, 2};
  CHECK(error_of(doc).rfind("families.pen", 0) == 0);

  doc = small_doc();
  doc.erase("space");
  CHECK(error_of(doc) == "space: missing");

  doc = small_doc();
  doc["measures"]["ne"] = 3;
  CHECK_FALSE(error_of(doc).empty());
}

TEST_CASE("sampler section") {
  const SamplerConfig s = config::parse_sampler(Json::parse(R"({"sampler": {"lo": -2, "hi": 3}})"));
  CHECK(s.lo == -2);
  CHECK(s.hi == 3);
  CHECK_THROWS_AS(config::parse_sampler(Json::parse(R"({"sampler": {"lo": 4, "hi": 3}})")), ConfigError);
  CHECK_THROWS_AS(config::parse_sampler(Json::parse(R"({"sampler": {"lo": "a"}})")), ConfigError);
}

TEST_CASE("load_file errors") {
  CHECK_THROWS_AS(config::load_file("/nonexistent/risklab.json"), ConfigError);
}

TEST_CASE("witness JSON carries everything needed to recheck it") {
  const Witness w{{Position{1, 2}, Position{0, -1}}, {0.5}, 1.25};
  const Json j = report::witness_json("property", "ne", w, 1e-7, Property::convexity);
  CHECK(j["witness_kind"] == "property");
  CHECK(j["property"] == "convexity");
  CHECK(j["subject"] == "ne");
  CHECK(j["positions"] == Json::parse("[[1.0, 2.0], [0.0, -1.0]]"));
  CHECK(j["scalars"] == Json::parse("[0.5]"));
  CHECK(j["margin"] == 1.25);
  CHECK_FALSE(j.contains("check"));

  Witness r = w;
  r.check = "attainment";
  const Json rj = report::witness_json("representation", "ne", r, 1e-9, std::nullopt, Engine::jia_orthant);
  CHECK(rj["check"] == "attainment");
  CHECK(rj["engine"] == "jia_orthant");
}

TEST_CASE("all_pass looks at every verdict except inside the config") {
  Json j = Json::parse(R"({"config": {"verdict": "fail"}, "results": [{"verdict": "pass"}, {"x": {"verdict": "pass"}}]})");
  CHECK(report::all_pass(j));
  j["results"][1]["x"]["verdict"] = "inconclusive";
  CHECK_FALSE(report::all_pass(j));
  j["results"][1]["x"]["verdict"] = "fail";
  CHECK_FALSE(report::all_pass(j));
}

TEST_CASE("envelope") {
  const Json e = report::envelope({"audit", 7, 100, 1e-7}, small_doc());
  CHECK(e["tool"] == "risklab");
  CHECK(e["command"] == "audit");
  CHECK(e["run"]["seed"] == 7);
  CHECK(e["run"]["samples"] == 100);
  CHECK(e["config"] == small_doc());
  CHECK_THROWS_AS(report::write(e, "/nonexistent/dir/report.json"), ConfigError);
}

TEST_CASE("audit JSON layout") {
  const Registry reg(small_doc());
  SamplerConfig cfg;
  cfg.count = 200;
  const Json j = report::audit_json(full_audit(reg.measure("es"), cfg), "es");
  CHECK(j["classification"]["coherent"] == true);
  REQUIRE(j["properties"].size() == 6);
  CHECK(j["properties"][0]["property"] == "monotonicity");
  CHECK(j["properties"][5]["property"] == "star_shapedness");
  for (const auto& p : j["properties"]) CHECK(p["verdict"] == "pass");
}
