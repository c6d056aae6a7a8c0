#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "persim/fft.hpp"
#include "persim/path.hpp"
#include "persim/rng.hpp"

namespace persim {

/// Fractional Gaussian noise: stationary centered Gaussian increments whose
/// cumulative sums have Var(Z_n) = n^{2H}.
struct FgnSpec {
  double hurst = 0.5;       // H in (0,1)
  std::int64_t length = 1;  // number of steps n

  void validate() const;
};

/// Increment autocovariance r(j) = (|j+1|^{2H} - 2 j^{2H} + |j-1|^{2H}) / 2.
double fgn_autocovariance(const FgnSpec& spec, std::int64_t lag);

/// Materialized correlations r(0..n-1). r(0) = 1, |r(j)| <= 1, and the block
/// sum over an n x n lag matrix telescopes to n^{2H}.
struct CovarianceSequence {
  std::vector<double> values;

  void validate() const;  // asserts the three invariants above
};

CovarianceSequence fgn_covariance_sequence(const FgnSpec& spec);

/// fBM covariance (t^{2H} + s^{2H} - |t-s|^{2H}) / 2; independent route to
/// r(j) used by the verification suite.
double fbm_covariance(double hurst, double s, double t);

/// Exact fGN sampler by circulant embedding (Davies-Harte). The covariance
/// spectrum is computed once per (H, n); each generation costs one complex
/// FFT and yields two independent paths.
///
/// The embedding uses size M = 2m with m the next power of two >= n; a prefix
/// of an exact stationary sample is itself exact, so any n is supported.
class FgnSampler {
 public:
  /// Per-worker scratch so trials can run concurrently against one sampler.
  struct Scratch {
    std::vector<std::complex<double>> freq;
    std::vector<std::complex<double>> work;
    std::vector<double> normals;
  };

  explicit FgnSampler(const FgnSpec& spec);

  const FgnSpec& spec() const { return spec_; }
  std::size_t embedding_size() const { return embed_; }

  /// Two independent fGN increment vectors (length n) from one stream key.
  void sample_increments_pair(StreamKey key, Scratch& scratch,
                              std::vector<double>& a,
                              std::vector<double>& b) const;

  /// Cumulative-sum path Z_0..Z_n; deterministic in `key`.
  PathSample sample(StreamKey key) const;

  /// Deterministic transform of caller-provided standard normal draws
  /// (2M values); exposes the linearity of the generator.
  void increments_from_noise(const double* normals, std::vector<double>& a,
                             std::vector<double>& b, Scratch& scratch) const;

  /// Dense-Cholesky reference sampler, O(n^3) setup; n <= 2048. Kept as the
  /// independent cross-validation route for the embedding.
  static PathSample sample_cholesky(const FgnSpec& spec, StreamKey key);

 private:
  FgnSpec spec_;
  std::size_t embed_;                // M = 2m
  std::shared_ptr<const FftPlan> plan_;
  std::vector<double> sqrt_lambda_;  // sqrt of circulant eigenvalues
};

}  // namespace persim
