#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "persim/mdm.hpp"
#include "persim/process.hpp"

namespace persim {

/// Wilson score interval for a binomial proportion.
struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials,
                               double z = 1.959963984540054);

/// Monte Carlo estimate of P(max_{1..n} Z <= level).
struct PersistenceEstimate {
  std::int64_t n = 0;
  double level = 0.0;
  double p_hat = 0.0;
  std::int64_t trials = 0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::int64_t successes = 0;
};

/// Trial t draws its streams from (seed, t); the estimate is identical for
/// every worker count and evaluation order.
PersistenceEstimate estimate_persistence(const ProcessSpec& spec, std::int64_t n,
                                         double level, std::int64_t trials,
                                         std::uint64_t seed, int workers = 0);

/// Same contract for the MdM survival probability P(T_0^(1) > n), with early
/// exit on return.
PersistenceEstimate estimate_mdm_survival(const MdmSpec& spec, std::int64_t n,
                                          std::int64_t trials, std::uint64_t seed,
                                          int workers = 0);

/// Sample mean of max_{1..n} Z / a_n.
struct MeanMaxEstimate {
  double b_hat = 0.0;
  double stderr_ = 0.0;
  std::int64_t n = 0;
  std::int64_t trials = 0;
};

MeanMaxEstimate estimate_mean_max(const ProcessSpec& spec, std::int64_t n,
                                  std::int64_t trials, std::uint64_t seed,
                                  int workers = 0);

/// Weighted least-squares fit of log p on log n (optionally log log n).
struct ExponentFit {
  double theta_hat = 0.0;
  double intercept = 0.0;
  double stderr_ = 0.0;
  double residual_rms = 0.0;
  std::optional<double> log_correction;  // coefficient of log log n if requested
  bool trimmed_smallest = false;
  std::vector<std::pair<std::int64_t, double>> grid;  // (n, p_hat) as fitted
};

/// Weights are inverse squared relative CI widths. Grids of >= 5 points drop
/// the smallest n when its residual exceeds 3x the RMS of the others.
/// Throws std::invalid_argument("underpowered grid") when any p_hat is 0.
ExponentFit fit_exponent(const std::vector<PersistenceEstimate>& grid,
                         bool with_log_correction = false);

/// Two-sample Kolmogorov-Smirnov p-value (asymptotic); conservative for
/// discrete samples.
double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b);

}  // namespace persim
