#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "persim/fgn.hpp"
#include "persim/mdm.hpp"
#include "persim/path.hpp"
#include "persim/rwrs.hpp"
#include "persim/walk.hpp"

namespace persim {

/// Declarative description of a scalar stationary-increment generator.
/// The length carried by the inner spec is a default; estimators override it
/// per horizon when sweeping a grid.
struct ProcessSpec {
  std::variant<FgnSpec, WalkSpec, RwrsSpec, MdmSpec> gen;

  void validate() const;
  std::string name() const;
  bool integer_valued() const;
};

/// Scaling sequence a_n of the generator (n^H for fGN, n^{1/alpha} for d = 1
/// walks, the RWRS regime table, n^{3/4} for MdM). Throws when the generator
/// has no covered regime.
double process_a_n(const ProcessSpec& spec, std::int64_t n);

/// Full path of one trial; used by tests and identity checks.
PathSample sample_process(const ProcessSpec& spec, std::int64_t n,
                          std::uint64_t seed, std::uint64_t trial);

/// Reusable per-worker state. fGN trials share one FFT plan and come in
/// pairs (two paths per transform), so the context caches the generated pair.
class TrialContext {
 public:
  explicit TrialContext(const ProcessSpec& spec, std::int64_t n);

  /// Persistence event {max_{1..n} Z <= level}; exits a trial as soon as the
  /// event has failed.
  bool persistence_trial(std::uint64_t seed, std::uint64_t trial, double level);

  /// max_{1..n} Z of one trial.
  double max_trial(std::uint64_t seed, std::uint64_t trial);

  std::int64_t length() const { return n_; }

 private:
  const double* fgn_increments(std::uint64_t seed, std::uint64_t trial);
  template <typename StepFn>
  double run_max(StepFn&& next);
  template <typename StepFn>
  bool run_persist(StepFn&& next, double level);

  ProcessSpec spec_;
  std::int64_t n_;
  std::unique_ptr<FgnSampler> fgn_;
  FgnSampler::Scratch scratch_;
  std::vector<double> incr_a_, incr_b_;
  std::uint64_t cached_pair_ = ~0ull;
  std::uint64_t cached_seed_ = 0;
};

}  // namespace persim
