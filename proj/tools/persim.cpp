#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "persim/acceptance.hpp"
#include "persim/experiment.hpp"
#include "persim/version.hpp"

namespace {

std::vector<int> parse_only(const std::string& csv) {
  std::vector<int> ids;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(pos, comma == std::string::npos
                                                ? std::string::npos
                                                : comma - pos);
    if (!tok.empty()) ids.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"persim: persistence-probability simulation toolkit"};
  app.set_version_flag("--version", persim::kToolkitVersion);
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  std::string run_config;
  run->add_option("--config", run_config, "config file")->required();
  std::uint64_t run_seed = 0;
  bool run_seed_set = false;
  run->add_option("--seed", run_seed, "override the master seed")
      ->each([&](const std::string&) { run_seed_set = true; });
  int run_workers = -1;
  run->add_option("--workers", run_workers, "override the worker count");
  std::string run_out;
  run->add_option("--out", run_out, "override the output directory");
  bool run_plot = false;
  run->add_flag("--plot", run_plot, "emit the SVG plot");

  // --- validate-config -----------------------------------------------------
  auto* validate = app.add_subcommand("validate-config", "check a config file");
  std::string validate_config;
  validate->add_option("--config", validate_config, "config file")->required();

  // --- reproduce-paper -----------------------------------------------------
  auto* repro = app.add_subcommand(
      "reproduce-paper", "run the acceptance experiments with pinned seeds");
  std::string repro_out = "reproduce_out";
  repro->add_option("--out", repro_out, "output directory");
  std::uint64_t repro_seed = persim::kDefaultMasterSeed;
  repro->add_option("--seed", repro_seed, "master seed (pinned default)");
  int repro_workers = 0;
  repro->add_option("--workers", repro_workers, "worker count (0 = all cores)");
  std::string repro_only;
  repro->add_option("--only", repro_only, "comma-separated criteria subset");
  bool repro_full_det = false;
  repro->add_flag("--full-determinism", repro_full_det,
                  "determinism probe reruns the whole suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run || *validate) {
      const std::string path = *run ? run_config : validate_config;
      persim::ExperimentConfig cfg;
      try {
        cfg = persim::load_config_file(path);
      } catch (const persim::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
      }
      if (*validate) {
        std::printf("config ok: %s\n", path.c_str());
        return 0;
      }
      if (run_seed_set) cfg.seed = run_seed;
      if (run_workers >= 0) cfg.workers = run_workers;
      if (!run_out.empty()) cfg.out_dir = run_out;
      if (run_plot) cfg.plot = true;
      return persim::run_experiment(cfg);
    }

    persim::AcceptanceOptions opts;
    opts.seed = repro_seed;
    opts.workers = repro_workers;
    opts.out_dir = repro_out;
    opts.cli_path = argv[0];
    opts.only = parse_only(repro_only);
    opts.full_determinism = repro_full_det;
    return persim::reproduce_paper(opts);
  } catch (const persim::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
