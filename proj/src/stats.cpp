#include "persim/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "persim/parallel.hpp"

namespace persim {

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials,
                               double z) {
  if (trials <= 0) throw std::invalid_argument("wilson_interval: trials must be > 0");
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half =
      z / denom * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t));
  return WilsonInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

PersistenceEstimate estimate_persistence(const ProcessSpec& spec, std::int64_t n,
                                         double level, std::int64_t trials,
                                         std::uint64_t seed, int workers) {
  if (trials < 100)
    throw std::invalid_argument("estimate_persistence: trials must be >= 100");

  std::vector<std::uint8_t> hit(static_cast<std::size_t>(trials), 0);
  run_trial_blocks(trials, workers, /*align=*/2,
                   [&](std::int64_t first, std::int64_t last) {
                     TrialContext ctx(spec, n);
                     for (std::int64_t t = first; t < last; ++t)
                       hit[static_cast<std::size_t>(t)] = ctx.persistence_trial(
                           seed, static_cast<std::uint64_t>(t), level);
                   });

  std::int64_t k = 0;
  for (std::uint8_t h : hit) k += h;

  PersistenceEstimate est;
  est.n = n;
  est.level = level;
  est.trials = trials;
  est.successes = k;
  est.p_hat = static_cast<double>(k) / static_cast<double>(trials);
  const WilsonInterval ci = wilson_interval(k, trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

PersistenceEstimate estimate_mdm_survival(const MdmSpec& spec, std::int64_t n,
                                          std::int64_t trials, std::uint64_t seed,
                                          int workers) {
  if (trials < 100)
    throw std::invalid_argument("estimate_mdm_survival: trials must be >= 100");
  MdmSpec local = spec;
  local.length = n;
  local.validate();

  std::vector<std::uint8_t> hit(static_cast<std::size_t>(trials), 0);
  run_trial_blocks(trials, workers, 1, [&](std::int64_t first, std::int64_t last) {
    for (std::int64_t t = first; t < last; ++t) {
      const auto tt = static_cast<std::uint64_t>(t);
      hit[static_cast<std::size_t>(t)] =
          mdm_survival(local, derive_stream(seed, tt, kStreamWalk),
                       derive_stream(seed, tt, kStreamEnvironment))
              .is_censored();
    }
  });

  std::int64_t k = 0;
  for (std::uint8_t h : hit) k += h;

  PersistenceEstimate est;
  est.n = n;
  est.level = 0.0;  // survival, not a level event
  est.trials = trials;
  est.successes = k;
  est.p_hat = static_cast<double>(k) / static_cast<double>(trials);
  const WilsonInterval ci = wilson_interval(k, trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

MeanMaxEstimate estimate_mean_max(const ProcessSpec& spec, std::int64_t n,
                                  std::int64_t trials, std::uint64_t seed,
                                  int workers) {
  if (trials < 2)
    throw std::invalid_argument("estimate_mean_max: trials must be >= 2");
  const double a_n = process_a_n(spec, n);  // throws for uncovered regimes

  std::vector<double> scaled(static_cast<std::size_t>(trials));
  run_trial_blocks(trials, workers, 2, [&](std::int64_t first, std::int64_t last) {
    TrialContext ctx(spec, n);
    for (std::int64_t t = first; t < last; ++t)
      scaled[static_cast<std::size_t>(t)] =
          ctx.max_trial(seed, static_cast<std::uint64_t>(t)) / a_n;
  });

  double mean = 0.0;
  for (double v : scaled) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : scaled) var += (v - mean) * (v - mean);
  var /= static_cast<double>(trials - 1);

  MeanMaxEstimate est;
  est.b_hat = mean;
  est.stderr_ = std::sqrt(var / static_cast<double>(trials));
  est.n = n;
  est.trials = trials;
  return est;
}

namespace {

// Solve the weighted normal equations for y ~ X b with diagonal weights.
// Returns coefficients and the unscaled covariance (X^T W X)^{-1}.
struct WlsResult {
  std::vector<double> coef;
  std::vector<double> cov;  // row-major p x p
};

WlsResult solve_wls(const std::vector<std::array<double, 3>>& rows,
                    const std::vector<double>& y, const std::vector<double>& w,
                    std::size_t p) {
  std::vector<double> xtx(p * p, 0.0), xty(p, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      xty[a] += w[i] * rows[i][a] * y[i];
      for (std::size_t b = 0; b < p; ++b)
        xtx[a * p + b] += w[i] * rows[i][a] * rows[i][b];
    }
  }
  // Gauss-Jordan on the augmented [xtx | I] to get the inverse.
  std::vector<double> inv(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) inv[i * p + i] = 1.0;
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < p; ++r)
      if (std::fabs(xtx[r * p + col]) > std::fabs(xtx[piv * p + col])) piv = r;
    if (xtx[piv * p + col] == 0.0)
      throw std::invalid_argument("fit_exponent: singular design matrix");
    if (piv != col)
      for (std::size_t c = 0; c < p; ++c) {
        std::swap(xtx[piv * p + c], xtx[col * p + c]);
        std::swap(inv[piv * p + c], inv[col * p + c]);
      }
    const double d = xtx[col * p + col];
    for (std::size_t c = 0; c < p; ++c) {
      xtx[col * p + c] /= d;
      inv[col * p + c] /= d;
    }
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const double f = xtx[r * p + col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < p; ++c) {
        xtx[r * p + c] -= f * xtx[col * p + c];
        inv[r * p + c] -= f * inv[col * p + c];
      }
    }
  }
  WlsResult res;
  res.cov = inv;
  res.coef.assign(p, 0.0);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) res.coef[a] += inv[a * p + b] * xty[b];
  return res;
}

ExponentFit fit_points(const std::vector<PersistenceEstimate>& grid,
                       bool with_log_correction) {
  const std::size_t p = with_log_correction ? 3 : 2;
  std::vector<std::array<double, 3>> rows;
  std::vector<double> y, w, sigma;
  for (const auto& g : grid) {
    if (g.p_hat <= 0.0) throw std::invalid_argument("underpowered grid");
    const double ln_n = std::log(static_cast<double>(g.n));
    rows.push_back({1.0, ln_n, with_log_correction ? std::log(ln_n) : 0.0});
    y.push_back(std::log(g.p_hat));
    const double rel = (g.ci_high - g.ci_low) / g.p_hat;
    w.push_back(1.0 / (rel * rel));
    // Relative CI width -> stddev of log p (95% two-sided normal score).
    sigma.push_back(rel / (2.0 * 1.959963984540054));
  }

  WlsResult res = solve_wls(rows, y, w, p);

  ExponentFit fit;
  fit.intercept = res.coef[0];
  fit.theta_hat = -res.coef[1];
  if (with_log_correction) fit.log_correction = res.coef[2];

  // Covariance calibrated with sigma = rel/(2z): w_i = c / sigma_i^2 with
  // constant c = (2z)^-2, so (X^T W X)^{-1} * c is the coefficient covariance.
  const double c = 1.0 / (2.0 * 1.959963984540054) / (2.0 * 1.959963984540054);
  fit.stderr_ = std::sqrt(std::max(0.0, res.cov[1 * p + 1] * c));

  double ss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double yhat = res.coef[0] + res.coef[1] * rows[i][1];
    if (with_log_correction) yhat += res.coef[2] * rows[i][2];
    ss += (y[i] - yhat) * (y[i] - yhat);
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(y.size()));

  for (const auto& g : grid) fit.grid.emplace_back(g.n, g.p_hat);
  return fit;
}

}  // namespace

ExponentFit fit_exponent(const std::vector<PersistenceEstimate>& grid,
                         bool with_log_correction) {
  if (grid.size() < 4)
    throw std::invalid_argument("fit_exponent: need at least 4 grid points");
  std::vector<PersistenceEstimate> pts = grid;
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });

  ExponentFit fit = fit_points(pts, with_log_correction);

  // Pre-asymptotic trimming: drop the smallest n when the fit through the
  // remaining points rejects it (leave-one-out residual over 3x their RMS).
  if (pts.size() >= 5) {
    const std::vector<PersistenceEstimate> rest(pts.begin() + 1, pts.end());
    const ExponentFit rest_fit = fit_points(rest, with_log_correction);
    const double ln_n0 = std::log(static_cast<double>(pts.front().n));
    double yhat0 = rest_fit.intercept - rest_fit.theta_hat * ln_n0;
    if (rest_fit.log_correction) yhat0 += *rest_fit.log_correction * std::log(ln_n0);
    const double resid0 = std::log(pts.front().p_hat) - yhat0;
    // 1e-12 floor keeps exact synthetic grids from tripping on roundoff.
    if (std::fabs(resid0) > 3.0 * std::max(rest_fit.residual_rms, 1e-12)) {
      fit = rest_fit;
      fit.trimmed_smallest = true;
    }
  }
  return fit;
}

namespace {

double ks_tail(double lambda) {
  // Q_KS(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2)
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample_pvalue: empty sample");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return ks_tail((ne + 0.12 + 0.11 / ne) * d);
}

}  // namespace persim
