#include <doctest.h>

#include <filesystem>
#include <string>

#include "persim/experiment.hpp"
#include "persim/report.hpp"

using namespace persim;
using nlohmann::json;

namespace {

std::string scratch_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("persim_test_" + tag);
  std::filesystem::remove_all(dir);
  return dir.string();
}

json base_walk_config(const std::string& out) {
  return json{{"experiment", "persistence_grid"},
              {"generator", {{"type", "walk"}, {"dimension", 1}, {"kind", "simple"}}},
              {"grid", {16, 32, 64, 128}},
              {"trials", 2000},
              {"level", -1.0},
              {"seed", 7777},
              {"out", out}};
}

}  // namespace

TEST_CASE("missing seed is rejected by name") {
  json doc = base_walk_config("x");
  doc.erase("seed");
  try {
    parse_config(doc);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field == "seed");
  }
}

TEST_CASE("invalid MdM p names the field") {
  json doc{{"experiment", "persistence_grid"},
           {"generator", {{"type", "mdm"}, {"p", 1.5}}},
           {"grid", {16, 32, 64, 128}},
           {"trials", 1000},
           {"seed", 1}};
  try {
    parse_config(doc);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field == "generator.p");
  }
}

TEST_CASE("unknown experiment kind and bad grid are rejected") {
  json doc = base_walk_config("x");
  doc["experiment"] = "nope";
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
  doc = base_walk_config("x");
  doc["grid"] = json::array();
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
  doc = base_walk_config("x");
  doc["trials"] = 10;
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("persistence grid writes the pinned CSV schema and summary keys") {
  const std::string out = scratch_dir("grid");
  json doc = base_walk_config(out);
  doc["plot"] = true;
  const ExperimentConfig cfg = parse_config(doc);
  CHECK(run_experiment(cfg) == 0);

  const std::string csv = read_file(out + "/results.csv");
  CHECK(csv.rfind("n,level,trials,p_hat,ci_low,ci_high\n", 0) == 0);
  CHECK(csv.find("\r") == std::string::npos);
  // one header + four rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  const json summary = json::parse(read_file(out + "/summary.json"));
  for (const char* key : {"experiment", "generator", "theta_hat", "theta_stderr",
                          "intercept", "log_correction", "grid", "seed",
                          "toolkit_version"})
    CHECK(summary.contains(key));
  CHECK(summary["experiment"] == "persistence_grid");
  CHECK(summary["seed"] == 7777);
  CHECK(summary["theta_hat"].is_number());

  const std::string svg = read_file(out + "/plot.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("theta") != std::string::npos);
}

TEST_CASE("reruns and worker counts leave the bytes unchanged") {
  const std::string out1 = scratch_dir("det1");
  const std::string out2 = scratch_dir("det2");
  json doc = base_walk_config(out1);
  doc["workers"] = 1;
  CHECK(run_experiment(parse_config(doc)) == 0);
  doc["out"] = out2;
  doc["workers"] = 3;
  CHECK(run_experiment(parse_config(doc)) == 0);
  CHECK(read_file(out1 + "/results.csv") == read_file(out2 + "/results.csv"));
  CHECK(read_file(out1 + "/summary.json") == read_file(out2 + "/summary.json"));
}

TEST_CASE("identities experiment: brute force example passes with exit 0") {
  const std::string out = scratch_dir("ident");
  json doc{{"experiment", "identities"},
           {"system",
            {{"type", "rwrs"}, {"scenery", "lazy_rademacher"}, {"q", "1/2"}}},
           {"n", 5},
           {"trials", 0},
           {"seed", 5},
           {"out", out}};
  CHECK(run_experiment(parse_config(doc)) == 0);
  const json summary = json::parse(read_file(out + "/summary.json"));
  CHECK(summary["identities"] == "all PASS");
}

TEST_CASE("identities experiment: gaussian generator reports NOT_APPLICABLE") {
  const std::string out = scratch_dir("identg");
  json doc{{"experiment", "identities"},
           {"generator",
            {{"type", "rwrs"},
             {"walk", {{"type", "walk"}, {"dimension", 1}, {"kind", "simple"}}},
             {"scenery", {{"law", "gaussian"}}}}},
           {"n", 32},
           {"trials", 1000},
           {"seed", 6},
           {"out", out}};
  CHECK(run_experiment(parse_config(doc)) == 0);
  const std::string csv = read_file(out + "/results.csv");
  CHECK(csv.find("NOT_APPLICABLE") != std::string::npos);
}

TEST_CASE("brute force experiment emits the exact rational") {
  const std::string out = scratch_dir("brute");
  json doc{{"experiment", "brute_force"},
           {"system", {{"type", "simple_walk"}}},
           {"n", 2},
           {"level", -1.0},
           {"seed", 2},
           {"out", out}};
  CHECK(run_experiment(parse_config(doc)) == 0);
  const json summary = json::parse(read_file(out + "/summary.json"));
  CHECK(summary["probability"] == "1/4");
  CHECK(summary["enumerated_states"] == 4);
  const std::string csv = read_file(out + "/results.csv");
  CHECK(csv.rfind("n,level,probability,num,den,enumerated_states\n", 0) == 0);
}

TEST_CASE("rational config fields accept a/b strings") {
  json doc{{"experiment", "brute_force"},
           {"system", {{"type", "mdm"}, {"p", "1/3"}}},
           {"n", 1},
           {"level", -1.0},
           {"seed", 3},
           {"out", scratch_dir("rat")}};
  const ExperimentConfig cfg = parse_config(doc);
  CHECK(cfg.system.p == Rational(1, 3));
  CHECK(run_experiment(cfg) == 0);
}

TEST_CASE("sup_delta experiment writes its schema") {
  const std::string out = scratch_dir("supd");
  json doc{{"experiment", "sup_delta"}, {"alpha", 2.0},   {"inner_steps", 512},
           {"trials", 300},             {"seed", 99},     {"out", out}};
  CHECK(run_experiment(parse_config(doc)) == 0);
  const std::string csv = read_file(out + "/results.csv");
  CHECK(csv.rfind("inner_steps,trials,mean,stderr,extrapolated\n", 0) == 0);
  const json summary = json::parse(read_file(out + "/summary.json"));
  CHECK(summary["sup_delta_mean"].is_number());
}

TEST_CASE("mean_max experiment runs") {
  const std::string out = scratch_dir("mm");
  json doc{{"experiment", "mean_max"},
           {"generator", {{"type", "fgn"}, {"hurst", 0.5}}},
           {"grid", {64, 128}},
           {"trials", 500},
           {"seed", 4},
           {"out", out}};
  CHECK(run_experiment(parse_config(doc)) == 0);
  const std::string csv = read_file(out + "/results.csv");
  CHECK(csv.rfind("n,trials,b_hat,stderr\n", 0) == 0);
}
