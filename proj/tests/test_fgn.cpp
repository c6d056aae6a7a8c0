#include <doctest.h>

#include <cmath>
#include <vector>

#include "persim/fgn.hpp"

using namespace persim;

TEST_CASE("autocovariance: Brownian case is white") {
  FgnSpec spec;
  spec.hurst = 0.5;
  spec.length = 8;
  CHECK(fgn_autocovariance(spec, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fgn_autocovariance(spec, 3) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("autocovariance at H=0.75, lag 1 via two routes") {
  FgnSpec spec;
  spec.hurst = 0.75;
  spec.length = 8;
  // E[B_H(1)(B_H(2)-B_H(1))] from the fBM covariance function.
  const double via_fbm =
      fbm_covariance(0.75, 1, 2) - fbm_covariance(0.75, 1, 1);
  const double r1 = fgn_autocovariance(spec, 1);
  CHECK(r1 == doctest::Approx(via_fbm).epsilon(1e-14));
  CHECK(r1 == doctest::Approx(0.5 * (std::pow(2.0, 1.5) - 2.0)).epsilon(1e-14));
  CHECK(r1 == doctest::Approx(0.414214).epsilon(1e-5));
}

TEST_CASE("covariance block sums telescope to n^{2H}") {
  for (double hurst : {0.25, 0.4, 0.5, 0.6, 0.75, 0.9}) {
    FgnSpec spec;
    spec.hurst = hurst;
    spec.length = 8;
    const std::int64_t n = 4;
    double sum = 0;
    for (std::int64_t i = 1; i <= n; ++i)
      for (std::int64_t j = 1; j <= n; ++j)
        sum += fgn_autocovariance(spec, std::llabs(i - j));
    CHECK(sum == doctest::Approx(std::pow(double(n), 2 * hurst)).epsilon(1e-12));
  }
}

TEST_CASE("covariance sequence invariants hold across H") {
  for (double hurst : {0.25, 0.5, 0.75, 0.9}) {
    FgnSpec spec;
    spec.hurst = hurst;
    spec.length = 64;
    const CovarianceSequence seq = fgn_covariance_sequence(spec);
    CHECK_NOTHROW(seq.validate());
    CHECK(seq.values.size() == 64);
    CHECK(seq.values[0] == 1.0);
    // Block sum identity at the sequence length.
    double sum = 0;
    for (std::int64_t i = 1; i <= 64; ++i)
      for (std::int64_t j = 1; j <= 64; ++j)
        sum += fgn_autocovariance(spec, std::llabs(i - j));
    CHECK(sum == doctest::Approx(std::pow(64.0, 2 * hurst)).epsilon(1e-10));
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  FgnSpec spec;
  spec.hurst = 0.7;
  spec.length = 300;  // not a power of two: prefix of the embedded block
  FgnSampler sampler(spec);
  const StreamKey key = derive_stream(77, 0, kStreamGaussCore);
  const PathSample a = sampler.sample(key);
  const PathSample b = sampler.sample(key);
  CHECK(a.values == b.values);
  CHECK(a.steps() == 300);
  CHECK(a.values[0] == 0.0);
}

TEST_CASE("generator is odd in the Gaussian core") {
  FgnSpec spec;
  spec.hurst = 0.75;
  spec.length = 64;
  FgnSampler sampler(spec);
  const std::size_t M = sampler.embedding_size();
  Rng rng(derive_stream(5, 1, 2));
  std::vector<double> noise(2 * M), neg(2 * M);
  for (std::size_t i = 0; i < noise.size(); ++i) {
    noise[i] = rng.normal();
    neg[i] = -noise[i];
  }
  FgnSampler::Scratch scratch;
  std::vector<double> a1, b1, a2, b2;
  sampler.increments_from_noise(noise.data(), a1, b1, scratch);
  sampler.increments_from_noise(neg.data(), a2, b2, scratch);
  for (std::size_t j = 0; j < a1.size(); ++j) {
    CHECK(a2[j] == -a1[j]);
    CHECK(b2[j] == -b1[j]);
  }
}

TEST_CASE("embedding eigenvalues are nonnegative across H") {
  for (double hurst : {0.1, 0.25, 0.5, 0.75, 0.9, 0.99})
    for (std::int64_t n : {16, 1000}) {
      FgnSpec spec;
      spec.hurst = hurst;
      spec.length = n;
      CHECK_NOTHROW(FgnSampler{spec});  // ctor asserts the spectrum
    }
}

TEST_CASE("H=0.5 increments are empirically uncorrelated at lag 1") {
  FgnSpec spec;
  spec.hurst = 0.5;
  spec.length = 64;
  FgnSampler sampler(spec);
  FgnSampler::Scratch scratch;
  std::vector<double> a, b;
  double sum = 0;
  std::int64_t pairs = 0;
  for (int t = 0; t < 1000; ++t) {
    sampler.sample_increments_pair(derive_stream(13, t, kStreamGaussCore),
                                   scratch, a, b);
    for (const auto* incr : {&a, &b})
      for (std::size_t j = 0; j + 1 < incr->size(); ++j) {
        sum += (*incr)[j] * (*incr)[j + 1];
        ++pairs;
      }
  }
  const double corr = sum / double(pairs);
  CHECK(std::fabs(corr) < 3.0 / std::sqrt(double(pairs)));
}

TEST_CASE("H=0.75 path variance matches n^{2H} within 5%") {
  FgnSpec spec;
  spec.hurst = 0.75;
  spec.length = 1024;
  FgnSampler sampler(spec);
  FgnSampler::Scratch scratch;
  std::vector<double> a, b;
  const int pairs = 5000;  // 10^4 paths
  double sum_sq = 0;
  for (int t = 0; t < pairs; ++t) {
    sampler.sample_increments_pair(derive_stream(29, t, kStreamGaussCore),
                                   scratch, a, b);
    for (const auto* incr : {&a, &b}) {
      double z = 0;
      for (double x : *incr) z += x;
      sum_sq += z * z;
    }
  }
  const double ratio = sum_sq / (2.0 * pairs) / std::pow(1024.0, 1.5);
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("empirical increment covariance matches r(j) at lags 0..5") {
  FgnSpec spec;
  spec.hurst = 0.75;
  spec.length = 32;
  FgnSampler sampler(spec);
  FgnSampler::Scratch scratch;
  std::vector<double> a, b;
  const int pairs = 6000;  // >= 10^4 paths
  std::array<double, 6> sum{}, sum_sq{};
  std::int64_t count = 0;
  for (int t = 0; t < pairs; ++t) {
    sampler.sample_increments_pair(derive_stream(31, t, kStreamGaussCore),
                                   scratch, a, b);
    for (const auto* incr : {&a, &b}) {
      ++count;
      for (int j = 0; j <= 5; ++j) {
        const double prod = (*incr)[0] * (*incr)[j];
        sum[j] += prod;
        sum_sq[j] += prod * prod;
      }
    }
  }
  for (int j = 0; j <= 5; ++j) {
    const double mean = sum[j] / double(count);
    const double var = sum_sq[j] / double(count) - mean * mean;
    const double se = std::sqrt(var / double(count));
    CHECK(std::fabs(mean - fgn_autocovariance(spec, j)) < 4.0 * se);
  }
}

TEST_CASE("the two paths of one transform are uncorrelated") {
  FgnSpec spec;
  spec.hurst = 0.75;
  spec.length = 32;
  FgnSampler sampler(spec);
  FgnSampler::Scratch scratch;
  std::vector<double> a, b;
  const int pairs = 20000;
  double cross = 0, cross_sq = 0;
  for (int t = 0; t < pairs; ++t) {
    sampler.sample_increments_pair(derive_stream(38, t, kStreamGaussCore),
                                   scratch, a, b);
    const double prod = a[3] * b[3];
    cross += prod;
    cross_sq += prod * prod;
  }
  const double mean = cross / pairs;
  const double se = std::sqrt((cross_sq / pairs - mean * mean) / pairs);
  CHECK(std::fabs(mean) < 4.0 * se);
}

TEST_CASE("increments are Gaussian: kurtosis near 3") {
  FgnSpec spec;
  spec.hurst = 0.6;
  spec.length = 16;
  FgnSampler sampler(spec);
  FgnSampler::Scratch scratch;
  std::vector<double> a, b;
  const int pairs = 20000;
  double s2 = 0, s4 = 0;
  for (int t = 0; t < pairs; ++t) {
    sampler.sample_increments_pair(derive_stream(37, t, kStreamGaussCore),
                                   scratch, a, b);
    for (const double x : {a[0], b[0]}) {
      s2 += x * x;
      s4 += x * x * x * x;
    }
  }
  const double n = 2.0 * pairs;
  const double kurt = (s4 / n) / ((s2 / n) * (s2 / n));
  CHECK(std::fabs(kurt - 3.0) < 3.0 * std::sqrt(24.0 / n));
}

// Dense Cholesky is the independent route: the two samplers must agree on the
// increment covariance within Monte Carlo error.
TEST_CASE("circulant embedding agrees with the Cholesky reference") {
  FgnSpec spec;
  spec.hurst = 0.8;
  spec.length = 256;
  FgnSampler sampler(spec);
  FgnSampler::Scratch scratch;
  std::vector<double> a, b;

  const int paths = 3000;
  double dh_var = 0, ch_var = 0, dh_lag1 = 0, ch_lag1 = 0;
  for (int t = 0; t < paths / 2; ++t) {
    sampler.sample_increments_pair(derive_stream(41, t, kStreamGaussCore),
                                   scratch, a, b);
    for (const auto* incr : {&a, &b}) {
      dh_var += (*incr)[7] * (*incr)[7];
      dh_lag1 += (*incr)[7] * (*incr)[8];
    }
  }
  for (int t = 0; t < paths; ++t) {
    const PathSample p =
        FgnSampler::sample_cholesky(spec, derive_stream(43, t, kStreamGaussCore));
    const double x7 = p.values[8] - p.values[7];
    const double x8 = p.values[9] - p.values[8];
    ch_var += x7 * x7;
    ch_lag1 += x7 * x8;
  }
  dh_var /= paths;
  ch_var /= paths;
  dh_lag1 /= paths;
  ch_lag1 /= paths;

  const double se = std::sqrt(2.0 / paths);  // rough se for both routes
  CHECK(std::fabs(dh_var - ch_var) < 4.0 * std::sqrt(2.0) * se);
  CHECK(std::fabs(dh_var - 1.0) < 4.0 * se);
  CHECK(std::fabs(ch_var - 1.0) < 4.0 * se);
  const double r1 = fgn_autocovariance(spec, 1);
  CHECK(std::fabs(dh_lag1 - r1) < 4.0 * se);
  CHECK(std::fabs(ch_lag1 - r1) < 4.0 * se);
}

TEST_CASE("spec validation") {
  FgnSpec spec;
  spec.hurst = 1.0;
  spec.length = 4;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.hurst = 0.5;
  spec.length = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
