#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "persim/oracle.hpp"
#include "persim/process.hpp"
#include "persim/scenery_limit.hpp"

namespace persim {

/// Config/schema violation; `field` names the offending entry.
struct ConfigError : std::runtime_error {
  ConfigError(std::string field_, const std::string& message)
      : std::runtime_error("config error at '" + field_ + "': " + message),
        field(std::move(field_)) {}
  std::string field;
};

enum class ExperimentKind {
  persistence_grid,
  mean_max,
  sup_delta,
  identities,
  brute_force,
};

/// A fully resolved experiment. The master seed is mandatory: reruns of the
/// same config are byte-identical, so there is no wall-clock default.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::persistence_grid;

  ProcessSpec generator;          // persistence_grid / mean_max / MC identities
  bool has_generator = false;
  OracleSystem system;            // identities / brute_force
  bool has_system = false;
  DeltaSpec delta;                // sup_delta

  std::vector<std::int64_t> grid;
  std::int64_t trials = 10000;
  double level = -1.0;
  std::int64_t horizon = 0;       // identities / brute_force
  bool with_log_correction = false;
  bool extrapolate = false;

  std::uint64_t seed = 0;
  std::string out_dir = "out";
  int workers = 0;                // 0 = hardware concurrency
  bool plot = false;

  nlohmann::ordered_json generator_json;  // echoed into the summary
};

/// Parse and validate; throws ConfigError naming the field.
ExperimentConfig parse_config(const nlohmann::json& doc);

ExperimentConfig load_config_file(const std::string& path);

/// Run and write artifacts under config.out_dir.
/// Returns 0 on success, 2 when an identity check FAILs.
int run_experiment(const ExperimentConfig& config);

/// Serialization helpers shared with the CLI.
nlohmann::ordered_json process_to_json(const ProcessSpec& spec);

}  // namespace persim
