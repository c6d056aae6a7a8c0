#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace persim {

/// Pinned master seed of the bundled reproduce-paper run.
inline constexpr std::uint64_t kDefaultMasterSeed = 0x5EEDC0DE2025ull;

struct AcceptanceOptions {
  std::uint64_t seed = kDefaultMasterSeed;
  int workers = 0;             // 0 = hardware concurrency
  std::string out_dir;         // empty = no artifacts
  std::string cli_path;        // toolkit binary, used by the determinism check
  std::vector<int> only;       // criteria subset; empty = all
  bool full_determinism = false;  // rerun the whole suite for the byte check
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Run the acceptance criteria (all, or the `only` subset) and report one
/// pass/fail result per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// The bundled experiment runner: executes the suite with pinned seeds,
/// writes artifacts under opts.out_dir and prints one line per criterion.
/// Returns 0 when every criterion passes, 2 otherwise.
int reproduce_paper(const AcceptanceOptions& opts);

std::string format_criterion_line(const CriterionResult& r);

}  // namespace persim
