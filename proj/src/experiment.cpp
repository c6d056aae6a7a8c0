#include "persim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "persim/report.hpp"
#include "persim/version.hpp"

namespace persim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError(field, msg);
}

const json& need(const json& doc, const std::string& field) {
  if (!doc.contains(field)) fail(field, "missing required field");
  return doc.at(field);
}

double need_number(const json& doc, const std::string& field) {
  const json& v = need(doc, field);
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::int64_t need_integer(const json& doc, const std::string& field) {
  const json& v = need(doc, field);
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::string need_string(const json& doc, const std::string& field) {
  const json& v = need(doc, field);
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

/// Rational from "a/b" strings, integers, or dyadic doubles (every double is
/// an exact rational).
Rational rational_from_json(const json& v, const std::string& field) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      fail(field, "expected \"a/b\" or a number");
    }
  }
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number_float()) {
    double d = v.get<double>();
    std::int64_t den = 1;
    while (d != std::floor(d) && den < (std::int64_t{1} << 52)) {
      d *= 2;
      den *= 2;
    }
    if (d != std::floor(d)) fail(field, "not exactly representable; use \"a/b\"");
    return Rational(static_cast<std::int64_t>(d), den);
  }
  fail(field, "expected a rational");
}

WalkSpec parse_walk(const json& doc, const std::string& prefix) {
  WalkSpec w;
  w.dimension = static_cast<int>(need_integer(doc, "dimension"));
  const std::string kind = need_string(doc, "kind");
  if (kind == "simple") {
    w.kind = WalkKind::simple;
  } else if (kind == "lazy") {
    w.kind = WalkKind::lazy;
    w.hold = need_number(doc, "hold");
  } else if (kind == "stable") {
    w.kind = WalkKind::stable;
    w.alpha = need_number(doc, "alpha");
  } else {
    fail(prefix + ".kind", "unknown walk kind '" + kind + "'");
  }
  try {
    w.length = 1;
    w.validate();
  } catch (const std::invalid_argument& e) {
    fail(prefix, e.what());
  }
  return w;
}

ScenerySpec parse_scenery(const json& doc, const std::string& prefix) {
  ScenerySpec s;
  const std::string law = need_string(doc, "law");
  if (law == "rademacher") {
    s.law = SceneryLaw::rademacher;
  } else if (law == "lazy_rademacher") {
    s.law = SceneryLaw::lazy_rademacher;
    if (doc.contains("q")) s.q = need_number(doc, "q");
  } else if (law == "gaussian") {
    s.law = SceneryLaw::gaussian;
  } else if (law == "bounded_uniform") {
    s.law = SceneryLaw::bounded_uniform;
  } else if (law == "symmetric_stable") {
    s.law = SceneryLaw::symmetric_stable;
    s.beta = need_number(doc, "beta");
  } else {
    fail(prefix + ".law", "unknown scenery law '" + law + "'");
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    fail(prefix, e.what());
  }
  return s;
}

ProcessSpec parse_generator(const json& doc) {
  ProcessSpec spec;
  const std::string type = need_string(doc, "type");
  if (type == "fgn") {
    FgnSpec f;
    f.hurst = need_number(doc, "hurst");
    f.length = 1;
    try {
      f.validate();
    } catch (const std::invalid_argument& e) {
      fail("generator.hurst", e.what());
    }
    spec.gen = f;
  } else if (type == "walk") {
    spec.gen = parse_walk(doc, "generator");
  } else if (type == "rwrs") {
    RwrsSpec r;
    r.walk = parse_walk(need(doc, "walk"), "generator.walk");
    r.scenery = parse_scenery(need(doc, "scenery"), "generator.scenery");
    r.length = 1;
    spec.gen = r;
  } else if (type == "mdm") {
    MdmSpec m;
    m.p = need_number(doc, "p");
    m.length = 1;
    try {
      m.validate();
    } catch (const std::invalid_argument& e) {
      fail("generator.p", e.what());
    }
    spec.gen = m;
  } else {
    fail("generator.type", "unknown generator '" + type + "'");
  }
  return spec;
}

OracleSystem parse_system(const json& doc) {
  OracleSystem sys;
  const std::string type = need_string(doc, "type");
  if (type == "simple_walk") {
    sys.kind = OracleSystem::Kind::simple_walk;
  } else if (type == "lazy_walk") {
    sys.kind = OracleSystem::Kind::lazy_walk;
    sys.hold = rational_from_json(need(doc, "hold"), "system.hold");
  } else if (type == "rwrs") {
    sys.kind = OracleSystem::Kind::rwrs;
    if (doc.contains("walk")) {
      const std::string walk = need_string(doc, "walk");
      if (walk == "lazy") {
        sys.rwrs_lazy_walk = true;
        sys.hold = rational_from_json(need(doc, "hold"), "system.hold");
      } else if (walk != "simple") {
        fail("system.walk", "expected \"simple\" or \"lazy\"");
      }
    }
    const std::string scenery = need_string(doc, "scenery");
    if (scenery == "rademacher") {
      sys.scenery = OracleSystem::Scenery::rademacher;
    } else if (scenery == "lazy_rademacher") {
      sys.scenery = OracleSystem::Scenery::lazy_rademacher;
      if (doc.contains("q")) sys.q = rational_from_json(doc.at("q"), "system.q");
    } else {
      fail("system.scenery", "unknown scenery '" + scenery + "'");
    }
  } else if (type == "mdm") {
    sys.kind = OracleSystem::Kind::mdm;
    sys.p = rational_from_json(need(doc, "p"), "system.p");
    if (!(Rational(0) < sys.p) || !(sys.p < Rational(1)))
      fail("system.p", "p must lie in (0,1)");
  } else {
    fail("system.type", "unknown system '" + type + "'");
  }
  return sys;
}

}  // namespace

ordered_json process_to_json(const ProcessSpec& spec) {
  ordered_json out;
  if (const auto* f = std::get_if<FgnSpec>(&spec.gen)) {
    out["type"] = "fgn";
    out["hurst"] = f->hurst;
  } else if (const auto* w = std::get_if<WalkSpec>(&spec.gen)) {
    out["type"] = "walk";
    out["dimension"] = w->dimension;
    out["kind"] = w->kind == WalkKind::simple ? "simple"
                  : w->kind == WalkKind::lazy ? "lazy"
                                              : "stable";
    if (w->kind == WalkKind::lazy) out["hold"] = w->hold;
    if (w->kind == WalkKind::stable) out["alpha"] = w->alpha;
  } else if (const auto* r = std::get_if<RwrsSpec>(&spec.gen)) {
    out["type"] = "rwrs";
    ProcessSpec walk_spec;
    walk_spec.gen = r->walk;
    out["walk"] = process_to_json(walk_spec);
    ordered_json sc;
    switch (r->scenery.law) {
      case SceneryLaw::rademacher: sc["law"] = "rademacher"; break;
      case SceneryLaw::lazy_rademacher:
        sc["law"] = "lazy_rademacher";
        sc["q"] = r->scenery.q;
        break;
      case SceneryLaw::gaussian: sc["law"] = "gaussian"; break;
      case SceneryLaw::bounded_uniform: sc["law"] = "bounded_uniform"; break;
      case SceneryLaw::symmetric_stable:
        sc["law"] = "symmetric_stable";
        sc["beta"] = r->scenery.beta;
        break;
    }
    out["scenery"] = sc;
  } else if (const auto* m = std::get_if<MdmSpec>(&spec.gen)) {
    out["type"] = "mdm";
    out["p"] = m->p;
  }
  return out;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("(root)", "config must be a JSON object");
  ExperimentConfig cfg;

  const std::string kind = need_string(doc, "experiment");
  if (kind == "persistence_grid") cfg.kind = ExperimentKind::persistence_grid;
  else if (kind == "mean_max") cfg.kind = ExperimentKind::mean_max;
  else if (kind == "sup_delta") cfg.kind = ExperimentKind::sup_delta;
  else if (kind == "identities") cfg.kind = ExperimentKind::identities;
  else if (kind == "brute_force") cfg.kind = ExperimentKind::brute_force;
  else fail("experiment", "unknown experiment kind '" + kind + "'");

  if (!doc.contains("seed")) fail("seed", "missing required field (no wall-clock default)");
  if (!doc.at("seed").is_number_integer()) fail("seed", "expected an integer");
  cfg.seed = doc.at("seed").get<std::uint64_t>();

  if (doc.contains("out")) cfg.out_dir = need_string(doc, "out");
  if (doc.contains("workers")) cfg.workers = static_cast<int>(need_integer(doc, "workers"));
  if (cfg.workers < 0) fail("workers", "must be >= 0");
  if (doc.contains("plot")) {
    if (!doc.at("plot").is_boolean()) fail("plot", "expected a boolean");
    cfg.plot = doc.at("plot").get<bool>();
  }
  if (doc.contains("level")) cfg.level = need_number(doc, "level");
  if (doc.contains("trials")) cfg.trials = need_integer(doc, "trials");
  if (doc.contains("with_log_correction")) {
    if (!doc.at("with_log_correction").is_boolean())
      fail("with_log_correction", "expected a boolean");
    cfg.with_log_correction = doc.at("with_log_correction").get<bool>();
  }

  switch (cfg.kind) {
    case ExperimentKind::persistence_grid:
    case ExperimentKind::mean_max: {
      cfg.generator = parse_generator(need(doc, "generator"));
      cfg.has_generator = true;
      cfg.generator_json = doc.at("generator");
      const json& grid = need(doc, "grid");
      if (!grid.is_array() || grid.empty()) fail("grid", "expected a non-empty array");
      for (const auto& v : grid) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
          fail("grid", "entries must be positive integers");
        cfg.grid.push_back(v.get<std::int64_t>());
      }
      std::sort(cfg.grid.begin(), cfg.grid.end());
      if (cfg.trials < 100) fail("trials", "must be >= 100");
      break;
    }
    case ExperimentKind::sup_delta: {
      cfg.delta.driving_alpha = doc.contains("alpha") ? need_number(doc, "alpha") : 2.0;
      cfg.delta.inner_steps = need_integer(doc, "inner_steps");
      cfg.delta.trials = cfg.trials;
      if (doc.contains("extrapolate")) {
        if (!doc.at("extrapolate").is_boolean()) fail("extrapolate", "expected a boolean");
        cfg.extrapolate = doc.at("extrapolate").get<bool>();
      }
      try {
        cfg.delta.validate();
      } catch (const std::invalid_argument& e) {
        fail("inner_steps", e.what());
      }
      if (cfg.trials < 100) fail("trials", "must be >= 100");
      break;
    }
    case ExperimentKind::identities: {
      cfg.horizon = need_integer(doc, "n");
      if (doc.contains("system")) {
        cfg.system = parse_system(doc.at("system"));
        cfg.has_system = true;
      } else if (doc.contains("generator")) {
        cfg.generator = parse_generator(doc.at("generator"));
        cfg.has_generator = true;
        cfg.generator_json = doc.at("generator");
        if (cfg.trials <= 0) fail("trials", "generator identities need trials > 0");
      } else {
        fail("system", "identities needs a 'system' or 'generator'");
      }
      if (cfg.trials < 0) fail("trials", "must be >= 0 (0 = brute force)");
      break;
    }
    case ExperimentKind::brute_force: {
      cfg.horizon = need_integer(doc, "n");
      cfg.system = parse_system(need(doc, "system"));
      cfg.has_system = true;
      if (cfg.level != std::floor(cfg.level))
        fail("level", "brute_force level must be an integer");
      break;
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("(file)", "cannot open config '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("(file)", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

namespace {

ordered_json summary_envelope(const ExperimentConfig& cfg, const std::string& kind) {
  ordered_json s;
  s["experiment"] = kind;
  s["generator"] = cfg.has_generator ? ordered_json(cfg.generator_json)
                   : cfg.has_system  ? ordered_json(cfg.system.name())
                                     : ordered_json(nullptr);
  s["theta_hat"] = nullptr;
  s["theta_stderr"] = nullptr;
  s["intercept"] = nullptr;
  s["log_correction"] = nullptr;
  s["grid"] = cfg.grid;
  s["seed"] = cfg.seed;
  s["toolkit_version"] = kToolkitVersion;
  return s;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty()) return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

int run_persistence_grid(const ExperimentConfig& cfg) {
  std::vector<PersistenceEstimate> grid;
  for (std::int64_t n : cfg.grid)
    grid.push_back(estimate_persistence(cfg.generator, n, cfg.level, cfg.trials,
                                        cfg.seed, cfg.workers));

  CsvBuilder csv({"n", "level", "trials", "p_hat", "ci_low", "ci_high"});
  for (const auto& g : grid)
    csv.row({std::to_string(g.n), format_double(g.level), std::to_string(g.trials),
             format_double(g.p_hat), format_double(g.ci_low),
             format_double(g.ci_high)});
  write_file(join_path(cfg.out_dir, "results.csv"), csv.str());

  ordered_json summary = summary_envelope(cfg, "persistence_grid");
  std::optional<ExponentFit> fit;
  if (grid.size() >= 4) {
    bool positive = true;
    for (const auto& g : grid) positive = positive && g.p_hat > 0.0;
    if (positive) {
      fit = fit_exponent(grid, cfg.with_log_correction);
      summary["theta_hat"] = fit->theta_hat;
      summary["theta_stderr"] = fit->stderr_;
      summary["intercept"] = fit->intercept;
      if (fit->log_correction) summary["log_correction"] = *fit->log_correction;
    }
  }
  write_file(join_path(cfg.out_dir, "summary.json"), summary.dump(2) + "\n");

  if (cfg.plot)
    write_file(join_path(cfg.out_dir, "plot.svg"),
               loglog_svg("persistence " + cfg.generator.name(), grid, fit));
  return 0;
}

int run_mean_max(const ExperimentConfig& cfg) {
  CsvBuilder csv({"n", "trials", "b_hat", "stderr"});
  ordered_json rows = ordered_json::array();
  for (std::int64_t n : cfg.grid) {
    const MeanMaxEstimate est =
        estimate_mean_max(cfg.generator, n, cfg.trials, cfg.seed, cfg.workers);
    csv.row({std::to_string(n), std::to_string(cfg.trials), format_double(est.b_hat),
             format_double(est.stderr_)});
    rows.push_back({{"n", n}, {"b_hat", est.b_hat}, {"stderr", est.stderr_}});
  }
  write_file(join_path(cfg.out_dir, "results.csv"), csv.str());

  ordered_json summary = summary_envelope(cfg, "mean_max");
  summary["results"] = rows;
  write_file(join_path(cfg.out_dir, "summary.json"), summary.dump(2) + "\n");
  return 0;
}

int run_sup_delta(const ExperimentConfig& cfg) {
  DeltaSpec spec = cfg.delta;
  spec.trials = cfg.trials;
  const SupDeltaEstimate est =
      estimate_sup_delta(spec, cfg.seed, cfg.workers, cfg.extrapolate);

  CsvBuilder csv({"inner_steps", "trials", "mean", "stderr", "extrapolated"});
  csv.row({std::to_string(est.inner_steps), std::to_string(spec.trials),
           format_double(est.mean), format_double(est.stderr_),
           est.extrapolated ? "1" : "0"});
  write_file(join_path(cfg.out_dir, "results.csv"), csv.str());

  ordered_json summary = summary_envelope(cfg, "sup_delta");
  summary["sup_delta_mean"] = est.mean;
  summary["sup_delta_stderr"] = est.stderr_;
  summary["extrapolated"] = est.extrapolated;
  write_file(join_path(cfg.out_dir, "summary.json"), summary.dump(2) + "\n");
  return 0;
}

int run_identities(const ExperimentConfig& cfg) {
  const IdentityReport report =
      cfg.has_system
          ? verify_identities(cfg.system, cfg.horizon, cfg.trials, cfg.seed,
                              cfg.workers)
          : verify_identities(cfg.generator, cfg.horizon, cfg.trials, cfg.seed,
                              cfg.workers);

  CsvBuilder csv({"identity", "status", "lhs", "rhs"});
  for (const auto& c : report.checks) {
    const char* status = c.status == IdentityCheck::Status::pass ? "PASS"
                         : c.status == IdentityCheck::Status::fail
                             ? "FAIL"
                             : "NOT_APPLICABLE";
    csv.row({c.name, status, c.lhs, c.rhs});
  }
  write_file(join_path(cfg.out_dir, "results.csv"), csv.str());

  ordered_json summary = summary_envelope(cfg, "identities");
  summary["identities"] = report.all_pass() ? "all PASS" : "FAIL";
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"status", c.status == IdentityCheck::Status::pass ? "PASS"
                                 : c.status == IdentityCheck::Status::fail
                                     ? "FAIL"
                                     : "NOT_APPLICABLE"},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs}});
  summary["checks"] = checks;
  write_file(join_path(cfg.out_dir, "summary.json"), summary.dump(2) + "\n");
  return report.all_pass() ? 0 : 2;
}

int run_brute_force(const ExperimentConfig& cfg) {
  const ExactResult result = brute_force_persistence(
      cfg.system, cfg.horizon, static_cast<std::int64_t>(cfg.level));

  CsvBuilder csv({"n", "level", "probability", "num", "den", "enumerated_states"});
  csv.row({std::to_string(cfg.horizon), format_double(cfg.level),
           format_double(result.probability.to_double()),
           std::to_string(result.probability.num_i64()),
           std::to_string(result.probability.den_i64()),
           std::to_string(result.enumerated_states)});
  write_file(join_path(cfg.out_dir, "results.csv"), csv.str());

  ordered_json summary = summary_envelope(cfg, "brute_force");
  summary["probability"] = result.probability.to_string();
  summary["probability_value"] = result.probability.to_double();
  summary["enumerated_states"] = result.enumerated_states;
  write_file(join_path(cfg.out_dir, "summary.json"), summary.dump(2) + "\n");
  return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::persistence_grid: return run_persistence_grid(cfg);
    case ExperimentKind::mean_max: return run_mean_max(cfg);
    case ExperimentKind::sup_delta: return run_sup_delta(cfg);
    case ExperimentKind::identities: return run_identities(cfg);
    case ExperimentKind::brute_force: return run_brute_force(cfg);
  }
  return 1;
}

}  // namespace persim
