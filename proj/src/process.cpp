#include "persim/process.hpp"

#include <cmath>
#include <stdexcept>

namespace persim {

void ProcessSpec::validate() const {
  std::visit([](const auto& g) { g.validate(); }, gen);
}

std::string ProcessSpec::name() const {
  struct Namer {
    std::string operator()(const FgnSpec&) const { return "fgn"; }
    std::string operator()(const WalkSpec&) const { return "walk"; }
    std::string operator()(const RwrsSpec&) const { return "rwrs"; }
    std::string operator()(const MdmSpec&) const { return "mdm"; }
  };
  return std::visit(Namer{}, gen);
}

bool ProcessSpec::integer_valued() const {
  struct Visitor {
    bool operator()(const FgnSpec&) const { return false; }
    bool operator()(const WalkSpec&) const { return true; }  // lattice positions
    bool operator()(const RwrsSpec& r) const { return r.scenery.integer_valued(); }
    bool operator()(const MdmSpec&) const { return true; }
  };
  return std::visit(Visitor{}, gen);
}

double process_a_n(const ProcessSpec& spec, std::int64_t n) {
  struct Visitor {
    std::int64_t n;
    double operator()(const FgnSpec& f) const {
      return std::pow(static_cast<double>(n), f.hurst);
    }
    double operator()(const WalkSpec& w) const {
      if (w.dimension != 1)
        throw std::invalid_argument("process_a_n: plain walks are scalar for d = 1 only");
      const double alpha = (w.kind == WalkKind::stable) ? w.alpha : 2.0;
      return std::pow(static_cast<double>(n), 1.0 / alpha);
    }
    double operator()(const RwrsSpec& r) const {
      return scaling_for(r.walk, r.scenery, n).a_n;
    }
    double operator()(const MdmSpec&) const {
      return std::pow(static_cast<double>(n), 0.75);
    }
  };
  return std::visit(Visitor{n}, spec.gen);
}

namespace {

std::int64_t with_length(ProcessSpec& spec, std::int64_t n) {
  std::visit([n](auto& g) { g.length = n; }, spec.gen);
  return n;
}

}  // namespace

PathSample sample_process(const ProcessSpec& spec, std::int64_t n,
                          std::uint64_t seed, std::uint64_t trial) {
  ProcessSpec local = spec;
  with_length(local, n);
  local.validate();

  if (const auto* f = std::get_if<FgnSpec>(&local.gen)) {
    // Pairing convention: trial 2j / 2j+1 are the two paths of FFT pair j.
    FgnSampler sampler(*f);
    FgnSampler::Scratch scratch;
    std::vector<double> a, b;
    sampler.sample_increments_pair(
        derive_stream(seed, trial / 2, kStreamGaussCore), scratch, a, b);
    const std::vector<double>& incr = (trial % 2 == 0) ? a : b;
    PathSample path;
    path.values.resize(incr.size() + 1);
    path.values[0] = 0.0;
    double z = 0.0;
    for (std::size_t j = 0; j < incr.size(); ++j) {
      z += incr[j];
      path.values[j + 1] = z;
    }
    return path;
  }
  if (const auto* w = std::get_if<WalkSpec>(&local.gen)) {
    if (w->dimension != 1)
      throw std::invalid_argument("sample_process: plain walks are scalar for d = 1 only");
    WalkStepper stepper(*w, derive_stream(seed, trial, kStreamWalk));
    PathSample path;
    path.integer_valued = true;
    path.values.resize(static_cast<std::size_t>(n) + 1);
    path.values[0] = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      stepper.step();
      path.values[static_cast<std::size_t>(k)] = static_cast<double>(stepper.x());
    }
    return path;
  }
  if (const auto* r = std::get_if<RwrsSpec>(&local.gen)) {
    return sample_rwrs(*r, derive_stream(seed, trial, kStreamWalk),
                       derive_stream(seed, trial, kStreamScenery));
  }
  const auto& m = std::get<MdmSpec>(local.gen);
  MdmStepper stepper(m, derive_stream(seed, trial, kStreamWalk),
                     derive_stream(seed, trial, kStreamEnvironment));
  PathSample path;
  path.integer_valued = true;
  path.values.resize(static_cast<std::size_t>(n) + 1);
  path.values[0] = 0.0;
  for (std::int64_t k = 1; k <= n; ++k)
    path.values[static_cast<std::size_t>(k)] = static_cast<double>(stepper.step());
  return path;
}

TrialContext::TrialContext(const ProcessSpec& spec, std::int64_t n)
    : spec_(spec), n_(n) {
  with_length(spec_, n);
  spec_.validate();
  if (const auto* f = std::get_if<FgnSpec>(&spec_.gen))
    fgn_ = std::make_unique<FgnSampler>(*f);
}

const double* TrialContext::fgn_increments(std::uint64_t seed, std::uint64_t trial) {
  const std::uint64_t pair = trial / 2;
  if (cached_pair_ != pair || cached_seed_ != seed) {
    fgn_->sample_increments_pair(derive_stream(seed, pair, kStreamGaussCore),
                                 scratch_, incr_a_, incr_b_);
    cached_pair_ = pair;
    cached_seed_ = seed;
  }
  return (trial % 2 == 0) ? incr_a_.data() : incr_b_.data();
}

template <typename StepFn>
double TrialContext::run_max(StepFn&& next) {
  double best = next();
  for (std::int64_t k = 2; k <= n_; ++k) best = std::max(best, next());
  return best;
}

template <typename StepFn>
bool TrialContext::run_persist(StepFn&& next, double level) {
  for (std::int64_t k = 1; k <= n_; ++k)
    if (next() > level) return false;
  return true;
}

bool TrialContext::persistence_trial(std::uint64_t seed, std::uint64_t trial,
                                     double level) {
  if (fgn_) {
    const double* incr = fgn_increments(seed, trial);
    double z = 0.0;
    for (std::int64_t k = 0; k < n_; ++k) {
      z += incr[k];
      if (z > level) return false;
    }
    return true;
  }
  if (const auto* w = std::get_if<WalkSpec>(&spec_.gen)) {
    WalkStepper stepper(*w, derive_stream(seed, trial, kStreamWalk));
    return run_persist(
        [&] { stepper.step(); return static_cast<double>(stepper.x()); }, level);
  }
  if (const auto* r = std::get_if<RwrsSpec>(&spec_.gen)) {
    RwrsStepper stepper(*r, derive_stream(seed, trial, kStreamWalk),
                        derive_stream(seed, trial, kStreamScenery));
    return run_persist([&] { return stepper.step(); }, level);
  }
  const auto& m = std::get<MdmSpec>(spec_.gen);
  MdmStepper stepper(m, derive_stream(seed, trial, kStreamWalk),
                     derive_stream(seed, trial, kStreamEnvironment));
  return run_persist(
      [&] { return static_cast<double>(stepper.step()); }, level);
}

double TrialContext::max_trial(std::uint64_t seed, std::uint64_t trial) {
  if (fgn_) {
    const double* incr = fgn_increments(seed, trial);
    double z = incr[0];
    double best = z;
    for (std::int64_t k = 1; k < n_; ++k) {
      z += incr[k];
      best = std::max(best, z);
    }
    return best;
  }
  if (const auto* w = std::get_if<WalkSpec>(&spec_.gen)) {
    WalkStepper stepper(*w, derive_stream(seed, trial, kStreamWalk));
    return run_max([&] { stepper.step(); return static_cast<double>(stepper.x()); });
  }
  if (const auto* r = std::get_if<RwrsSpec>(&spec_.gen)) {
    RwrsStepper stepper(*r, derive_stream(seed, trial, kStreamWalk),
                        derive_stream(seed, trial, kStreamScenery));
    return run_max([&] { return stepper.step(); });
  }
  const auto& m = std::get<MdmSpec>(spec_.gen);
  MdmStepper stepper(m, derive_stream(seed, trial, kStreamWalk),
                     derive_stream(seed, trial, kStreamEnvironment));
  return run_max([&] { return static_cast<double>(stepper.step()); });
}

}  // namespace persim
