#include "persim/fgn.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace persim {

void FgnSpec::validate() const {
  if (!(hurst > 0.0) || !(hurst < 1.0))
    throw std::invalid_argument("FgnSpec: hurst must lie in (0,1)");
  if (length < 1) throw std::invalid_argument("FgnSpec: length must be >= 1");
}

double fbm_covariance(double hurst, double s, double t) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::fabs(t - s), h2));
}

double fgn_autocovariance(const FgnSpec& spec, std::int64_t lag) {
  if (lag < 0) throw std::invalid_argument("fgn_autocovariance: lag must be >= 0");
  const double h2 = 2.0 * spec.hurst;
  const double j = static_cast<double>(lag);
  return 0.5 * (std::pow(j + 1.0, h2) - 2.0 * std::pow(j, h2) +
                std::pow(std::fabs(j - 1.0), h2));
}

CovarianceSequence fgn_covariance_sequence(const FgnSpec& spec) {
  spec.validate();
  CovarianceSequence seq;
  seq.values.resize(static_cast<std::size_t>(spec.length));
  for (std::int64_t j = 0; j < spec.length; ++j)
    seq.values[static_cast<std::size_t>(j)] = fgn_autocovariance(spec, j);
  return seq;
}

void CovarianceSequence::validate() const {
  if (values.empty() || values.front() != 1.0)
    throw std::invalid_argument("CovarianceSequence: r(0) must be 1");
  for (double r : values)
    if (std::fabs(r) > 1.0 + 1e-15)
      throw std::invalid_argument("CovarianceSequence: |r(j)| must be <= 1");
}

FgnSampler::FgnSampler(const FgnSpec& spec) : spec_(spec) {
  spec_.validate();
  const std::size_t m = std::bit_ceil(static_cast<std::size_t>(spec_.length));
  embed_ = 2 * m;
  plan_ = std::make_shared<FftPlan>(embed_);

  // First row of the circulant extension of the covariance: r(0..m) mirrored.
  std::vector<std::complex<double>> row(embed_), work(embed_);
  for (std::size_t j = 0; j <= m; ++j)
    row[j] = fgn_autocovariance(spec_, static_cast<std::int64_t>(j));
  for (std::size_t j = m + 1; j < embed_; ++j) row[j] = row[embed_ - j];
  plan_->forward(row.data(), work.data());

  // The fGN embedding is nonnegative definite; anything below is FP noise.
  double max_ev = 0.0;
  for (const auto& ev : row) max_ev = std::max(max_ev, ev.real());
  const double tol = 1e-10 * max_ev;
  sqrt_lambda_.resize(embed_);
  for (std::size_t k = 0; k < embed_; ++k) {
    const double ev = row[k].real();
    if (ev < -tol) throw std::runtime_error("embedding failed: negative eigenvalue");
    sqrt_lambda_[k] = std::sqrt(std::max(ev, 0.0));
  }
}

void FgnSampler::increments_from_noise(const double* normals,
                                       std::vector<double>& a,
                                       std::vector<double>& b,
                                       Scratch& scratch) const {
  const std::size_t M = embed_;
  auto& freq = scratch.freq;
  freq.resize(M);
  scratch.work.resize(M);
  for (std::size_t k = 0; k < M; ++k)
    freq[k] = std::complex<double>(sqrt_lambda_[k] * normals[2 * k],
                                   sqrt_lambda_[k] * normals[2 * k + 1]);
  plan_->forward(freq.data(), scratch.work.data());

  // Re and Im parts are independent stationary sequences with autocovariance
  // r(|i-j|) after the 1/sqrt(M) normalization.
  const double norm = 1.0 / std::sqrt(static_cast<double>(M));
  const std::size_t n = static_cast<std::size_t>(spec_.length);
  a.resize(n);
  b.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = freq[j].real() * norm;
    b[j] = freq[j].imag() * norm;
  }
}

void FgnSampler::sample_increments_pair(StreamKey key, Scratch& scratch,
                                        std::vector<double>& a,
                                        std::vector<double>& b) const {
  const std::size_t M = embed_;
  Rng rng(key);
  scratch.normals.resize(2 * M);
  for (auto& g : scratch.normals) g = rng.normal();
  increments_from_noise(scratch.normals.data(), a, b, scratch);
}

PathSample FgnSampler::sample(StreamKey key) const {
  Scratch scratch;
  std::vector<double> a, b;
  sample_increments_pair(key, scratch, a, b);
  PathSample path;
  path.values.resize(a.size() + 1);
  path.values[0] = 0.0;
  double z = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    z += a[j];
    path.values[j + 1] = z;
  }
  return path;
}

PathSample FgnSampler::sample_cholesky(const FgnSpec& spec, StreamKey key) {
  spec.validate();
  const std::size_t n = static_cast<std::size_t>(spec.length);
  if (n > 2048)
    throw std::invalid_argument("sample_cholesky: n too large for dense factorization");

  // Lower-triangular factor of R_{ij} = r(|i-j|), built in place.
  std::vector<double> L(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = fgn_autocovariance(spec, static_cast<std::int64_t>(i - j));
      for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
      if (i == j) {
        if (s <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
        L[i * n + i] = std::sqrt(s);
      } else {
        L[i * n + j] = s / L[j * n + j];
      }
    }
  }

  Rng rng(key);
  std::vector<double> g(n);
  for (auto& v : g) v = rng.normal();

  PathSample path;
  path.values.resize(n + 1);
  path.values[0] = 0.0;
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = 0.0;
    for (std::size_t k = 0; k <= i; ++k) x += L[i * n + k] * g[k];
    z += x;
    path.values[i + 1] = z;
  }
  return path;
}

}  // namespace persim
