#include "persim/scenery_limit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "persim/parallel.hpp"
#include "persim/rwrs.hpp"

namespace persim {

void DeltaSpec::validate() const {
  if (!(driving_alpha > 1.0) || !(driving_alpha <= 2.0))
    throw std::invalid_argument("DeltaSpec: driving_alpha must lie in (1,2]");
  if (inner_steps < 256)
    throw std::invalid_argument("DeltaSpec: inner_steps must be >= 256");
  if (trials < 1) throw std::invalid_argument("DeltaSpec: trials must be >= 1");
}

namespace {

RwrsSpec prelimit_spec(const DeltaSpec& spec) {
  RwrsSpec rwrs;
  rwrs.walk.dimension = 1;
  if (spec.driving_alpha == 2.0) {
    rwrs.walk.kind = WalkKind::simple;
  } else {
    rwrs.walk.kind = WalkKind::stable;
    rwrs.walk.alpha = spec.driving_alpha;
  }
  rwrs.walk.length = spec.inner_steps;
  rwrs.scenery.law = SceneryLaw::gaussian;
  rwrs.length = spec.inner_steps;
  return rwrs;
}

double one_draw(const DeltaSpec& spec, std::uint64_t seed, std::uint64_t trial,
                double scale) {
  const RwrsSpec rwrs = prelimit_spec(spec);
  RwrsStepper stepper(rwrs, derive_stream(seed, trial, kStreamWalk),
                      derive_stream(seed, trial, kStreamScenery), scale);
  double running_max = 0.0;  // t = 0 belongs to the sup
  for (std::int64_t k = 1; k <= spec.inner_steps; ++k)
    running_max = std::max(running_max, stepper.step());
  const double a_n = std::pow(static_cast<double>(spec.inner_steps),
                              1.0 - 1.0 / (2.0 * spec.driving_alpha));
  return running_max / a_n;
}

}  // namespace

double sample_sup_delta(const DeltaSpec& spec, std::uint64_t seed,
                        std::uint64_t trial) {
  spec.validate();
  return one_draw(spec, seed, trial, 1.0);
}

double detail::sample_sup_delta_scaled(const DeltaSpec& spec, std::uint64_t seed,
                                       std::uint64_t trial, double scenery_scale) {
  spec.validate();
  return one_draw(spec, seed, trial, scenery_scale);
}

namespace {

SupDeltaEstimate estimate_once(const DeltaSpec& spec, std::uint64_t seed,
                               int workers) {
  std::vector<double> draws(static_cast<std::size_t>(spec.trials));
  run_trial_blocks(spec.trials, workers, 1, [&](std::int64_t first, std::int64_t last) {
    for (std::int64_t t = first; t < last; ++t)
      draws[static_cast<std::size_t>(t)] =
          one_draw(spec, seed, static_cast<std::uint64_t>(t), 1.0);
  });

  double mean = 0.0;
  for (double d : draws) mean += d;
  mean /= static_cast<double>(spec.trials);
  double var = 0.0;
  for (double d : draws) var += (d - mean) * (d - mean);
  var /= static_cast<double>(spec.trials - 1);

  SupDeltaEstimate est;
  est.mean = mean;
  est.stderr_ = std::sqrt(var / static_cast<double>(spec.trials));
  est.inner_steps = spec.inner_steps;
  est.extrapolated = false;
  return est;
}

}  // namespace

SupDeltaEstimate estimate_sup_delta(const DeltaSpec& spec, std::uint64_t seed,
                                    int workers, bool extrapolate) {
  spec.validate();
  if (spec.trials < 100)
    throw std::invalid_argument("estimate_sup_delta: trials must be >= 100");

  SupDeltaEstimate fine = estimate_once(spec, seed, workers);
  if (!extrapolate) return fine;

  DeltaSpec coarse_spec = spec;
  coarse_spec.inner_steps = std::max<std::int64_t>(256, spec.inner_steps / 4);
  SupDeltaEstimate coarse = estimate_once(coarse_spec, seed ^ kGolden, workers);

  SupDeltaEstimate out;
  out.mean = 2.0 * fine.mean - coarse.mean;
  out.stderr_ = std::sqrt(4.0 * fine.stderr_ * fine.stderr_ +
                          coarse.stderr_ * coarse.stderr_);
  out.inner_steps = spec.inner_steps;
  out.extrapolated = true;
  return out;
}

}  // namespace persim
