#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "risklab/cli.hpp"
#include "risklab/config.hpp"

namespace fs = std::filesystem;
using risklab::config::Json;

namespace {

fs::path tmp_dir() {
  const char* env = std::getenv("RISKLAB_TEST_TMP");
  fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "risklab_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string path(const std::string& name) { return (tmp_dir() / name).string(); }

int run(std::vector<std::string> args) {
  std::ostringstream out, err;
  return risklab::cli::run(args, out, err);
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_config(const std::string& name, const std::string& text) {
  const std::string p = path(name);
  std::ofstream(p) << text;
  return p;
}

Json load(const std::string& p) { return Json::parse(slurp(p)); }

const char* kCoherent = R"({
  "space": {"uniform": 3},
  "measures": {"es": {"type": "es", "alpha": 0.5}, "wc": {"type": "worst_case"}}
})";

const char* kMixed = R"({
  "space": {"uniform": 4},
  "measures": {"var": {"type": "var", "alpha": 0.25}, "ne": {"type": "neg_expectation"}}
})";

}  // namespace

TEST_CASE("exit codes") {
  const std::string coherent = write_config("coherent.json", kCoherent);
  const std::string mixed = write_config("mixed.json", kMixed);
  CHECK(run({"audit", "--config", coherent, "--samples", "300", "--report", path("a.json")}) == 0);
  CHECK(load(path("a.json"))["verdict"] == "pass");
  CHECK(run({"audit", "--config", mixed, "--samples", "2000", "--report", path("b.json")}) == 1);
  CHECK(load(path("b.json"))["verdict"] == "fail");

  CHECK(run({"audit"}) == 2);
  CHECK(run({"audit", "--config", path("does_not_exist.json")}) == 2);
  CHECK(run({"nonsense"}) == 2);
  CHECK(run({"audit", "--config", coherent, "--samples", "0"}) == 2);
  CHECK(run({"audit", "--config", write_config("bad.json", "{\"space\": ")}) == 2);
  CHECK(run({"audit", "--config", write_config("badref.json", R"({"space": {"uniform": 2},
      "measures": {"a": {"type": "translate", "by": 1, "of": "b"}}})")}) == 2);
  CHECK(run({"--help"}) == 0);

  // every position is accepted, so the induced value is -infinity
  const std::string unbounded = write_config("unbounded.json", R"({"space": {"uniform": 2},
      "measures": {"m": {"type": "induced", "of": {"type": "translate", "by": -1e7, "of": {"type": "neg_expectation"}}}}})");
  CHECK(run({"audit", "--config", unbounded, "--samples", "10"}) == 3);
}

TEST_CASE("sample count precedence") {
  const std::string coherent = write_config("coherent.json", kCoherent);
  ::setenv(risklab::cli::kSamplesEnv, "123", 1);
  CHECK(run({"audit", "--config", coherent, "--report", path("env.json")}) == 0);
  CHECK(load(path("env.json"))["run"]["samples"] == 123);
  CHECK(run({"audit", "--config", coherent, "--samples", "50", "--report", path("flag.json")}) == 0);
  CHECK(load(path("flag.json"))["run"]["samples"] == 50);
  const std::string with_sampler = write_config("sampler.json", R"({"space": {"uniform": 3},
      "measures": {"es": {"type": "es", "alpha": 0.5}}, "sampler": {"samples": 77, "seed": 5}})");
  CHECK(run({"audit", "--config", with_sampler, "--report", path("cfg.json")}) == 0);
  CHECK(load(path("cfg.json"))["run"]["samples"] == 77);
  CHECK(load(path("cfg.json"))["run"]["seed"] == 5);
  ::setenv(risklab::cli::kSamplesEnv, "many", 1);
  CHECK(run({"audit", "--config", coherent}) == 2);
  ::unsetenv(risklab::cli::kSamplesEnv);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string mixed = write_config("mixed.json", kMixed);
  REQUIRE(run({"audit", "--config", mixed, "--samples", "1000", "--report", path("r1.json")}) == 1);
  REQUIRE(run({"audit", "--config", mixed, "--samples", "1000", "--report", path("r2.json")}) == 1);
  CHECK(slurp(path("r1.json")) == slurp(path("r2.json")));
  CHECK_FALSE(load(path("r1.json")).contains("timing"));
}

TEST_CASE("oracle --verify rechecks every witness in a report") {
  const std::string mixed = write_config("mixed.json", kMixed);
  REQUIRE(run({"audit", "--config", mixed, "--samples", "1000", "--report", path("audit.json")}) == 1);
  CHECK(run({"oracle", "--verify", path("audit.json"), "--report", path("verified.json")}) == 0);
  const Json v = load(path("verified.json"));
  CHECK(v["checks"].size() >= 1);
  for (const auto& c : v["checks"]) CHECK(c["verdict"] == "pass");

  REQUIRE(run({"examples", "--samples", "100", "--report", path("examples.json")}) == 0);
  CHECK(run({"oracle", "--verify", path("examples.json"), "--report", path("verified2.json")}) == 0);
  CHECK(load(path("verified2.json"))["checks"].size() > 40);

  // a tampered margin is caught
  Json tampered = load(path("audit.json"));
  bool changed = false;
  for (auto& r : tampered["results"]) {
    for (auto& p : r["properties"]) {
      if (p.contains("witness") && !changed) {
        p["witness"]["positions"][0][0] = 0.0;
        p["witness"]["positions"][1] = p["witness"]["positions"][0];
        changed = true;
      }
    }
  }
  REQUIRE(changed);
  std::ofstream(path("tampered.json")) << tampered.dump(2);
  CHECK(run({"oracle", "--verify", path("tampered.json")}) == 1);
}

TEST_CASE("figure writes an SVG with two regions and two boundaries") {
  CHECK(run({"figure", "--out", path("fig.svg"), "--vertices", path("fig.txt"), "--report", path("fig.json")}) == 0);
  const std::string svg = slurp(path("fig.svg"));
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
    return n;
  };
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count("<polygon") == 2);
  CHECK(count("<polyline") == 2);
  CHECK(count("</svg>") == 1);
  CHECK(slurp(path("fig.txt")).find("# staircase_boundary") != std::string::npos);
  const Json j = load(path("fig.json"));
  CHECK(j["results"]["agreement"]["mismatches"] == 0);
  CHECK(j["results"]["cone_boundary"] == Json::parse("[[-4.0, 4.0], [0.0, 0.0], [4.0, -2.0]]"));
}

TEST_CASE("translate") {
  const std::string fam = write_config("family.json", R"({"space": {"uniform": 4},
      "measures": {"ent": {"type": "entropic", "theta": 1}, "ne": {"type": "neg_expectation"}},
      "families": {"f": {"members": [{"type": "translate", "by": 0.5, "of": "ent"},
                                     {"type": "translate", "by": 0.3, "of": "ne"}]}},
      "translate": {"family": "f"}})");
  CHECK(run({"translate", "--config", fam, "--samples", "500", "--report", path("t.json")}) == 0);
  const Json t = load(path("t.json"));
  CHECK(t["results"]["c_star"].get<double>() == doctest::Approx(0.5));
  CHECK(run({"translate", "--config", fam, "--samples", "500", "--c", "0.1", "--report", path("t2.json")}) == 1);
  CHECK(run({"oracle", "--verify", path("t2.json")}) == 0);
  CHECK(run({"translate", "--config", fam, "--c", "abc"}) == 2);
}
