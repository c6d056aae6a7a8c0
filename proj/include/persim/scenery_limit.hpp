#pragma once

#include <cstdint>

#include "persim/rng.hpp"

namespace persim {

/// Discretization of the Kesten-Spitzer process Delta: the RWRS pre-limit
/// with an alpha-stable (simple when alpha = 2) driving walk and standard
/// Gaussian scenery, normalized by a_N = N^{1 - 1/(2 alpha)}.
struct DeltaSpec {
  double driving_alpha = 2.0;     // alpha in (1,2]; 2 selects Delta^(0)
  std::int64_t inner_steps = 16384;  // N, discretization steps per unit time
  std::int64_t trials = 10000;

  void validate() const;
};

/// One draw of sup_{t in [0,1]} Delta_t (>= 0: t = 0 is included).
double sample_sup_delta(const DeltaSpec& spec, std::uint64_t seed,
                        std::uint64_t trial = 0);

struct SupDeltaEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t inner_steps = 0;
  bool extrapolated = false;
};

/// Monte Carlo estimate of E[sup Delta] over spec.trials i.i.d. draws.
/// With `extrapolate`, applies the documented Richardson step
/// 2 est(N) - est(N/4) over the two horizons and flags the output.
SupDeltaEstimate estimate_sup_delta(const DeltaSpec& spec, std::uint64_t seed,
                                    int workers = 1, bool extrapolate = false);

namespace detail {
/// Same draw with the scenery amplitude scaled; used by the linearity check.
double sample_sup_delta_scaled(const DeltaSpec& spec, std::uint64_t seed,
                               std::uint64_t trial, double scenery_scale);
}  // namespace detail

}  // namespace persim
