#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "persim/scenery_limit.hpp"
#include "persim/stats.hpp"

using namespace persim;

TEST_CASE("sup Delta samples are nonnegative (t = 0 included)") {
  DeltaSpec spec;
  spec.inner_steps = 256;
  for (int t = 0; t < 500; ++t) CHECK(sample_sup_delta(spec, 21, t) >= 0.0);
}

TEST_CASE("samples are linear in the scenery amplitude") {
  DeltaSpec spec;
  spec.inner_steps = 512;
  for (int t = 0; t < 50; ++t) {
    const double base = sample_sup_delta(spec, 22, t);
    const double scaled = detail::sample_sup_delta_scaled(spec, 22, t, 2.5);
    CHECK(scaled == doctest::Approx(2.5 * base).epsilon(1e-12));
  }
}

TEST_CASE("stderr scales like 1/sqrt(trials)") {
  DeltaSpec spec;
  spec.inner_steps = 512;
  spec.trials = 100;
  const SupDeltaEstimate small = estimate_sup_delta(spec, 23, 2);
  spec.trials = 400;
  const SupDeltaEstimate big = estimate_sup_delta(spec, 23, 2);
  const double ratio = small.stderr_ / big.stderr_;
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.20));
}

TEST_CASE("discretization bias: doubling N moves the mean by < 2 stderr") {
  DeltaSpec spec;
  spec.driving_alpha = 2.0;
  spec.trials = 4000;
  spec.inner_steps = std::int64_t{1} << 12;
  const SupDeltaEstimate coarse = estimate_sup_delta(spec, 24, 2);
  spec.inner_steps = std::int64_t{1} << 14;
  const SupDeltaEstimate fine = estimate_sup_delta(spec, 25, 2);
  const double se = std::hypot(coarse.stderr_, fine.stderr_);
  CHECK(std::fabs(coarse.mean - fine.mean) < 2.0 * se);
}

TEST_CASE("discrete self-similarity: horizons N and 2N agree in law") {
  DeltaSpec spec;
  spec.driving_alpha = 2.0;
  const int samples = 3000;
  std::vector<double> at_n, at_2n;
  spec.inner_steps = std::int64_t{1} << 12;
  for (int t = 0; t < samples; ++t) at_n.push_back(sample_sup_delta(spec, 26, t));
  spec.inner_steps = std::int64_t{1} << 13;
  for (int t = 0; t < samples; ++t) at_2n.push_back(sample_sup_delta(spec, 27, t));
  CHECK(ks_two_sample_pvalue(at_n, at_2n) > 0.01);
}

TEST_CASE("alpha = 1.5 estimate is positive and finite") {
  DeltaSpec spec;
  spec.driving_alpha = 1.5;
  spec.inner_steps = 1024;
  spec.trials = 500;
  const SupDeltaEstimate est = estimate_sup_delta(spec, 28, 2);
  CHECK(est.mean > 0.0);
  CHECK(std::isfinite(est.mean));
  CHECK(est.stderr_ > 0.0);
}

TEST_CASE("Richardson step flags the output") {
  DeltaSpec spec;
  spec.inner_steps = 2048;
  spec.trials = 400;
  const SupDeltaEstimate plain = estimate_sup_delta(spec, 29, 2, false);
  CHECK_FALSE(plain.extrapolated);
  const SupDeltaEstimate extr = estimate_sup_delta(spec, 29, 2, true);
  CHECK(extr.extrapolated);
  CHECK(std::isfinite(extr.mean));
  CHECK(extr.stderr_ > plain.stderr_);
}

TEST_CASE("validation") {
  DeltaSpec spec;
  spec.inner_steps = 128;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.inner_steps = 512;
  spec.driving_alpha = 0.9;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.driving_alpha = 2.0;
  spec.trials = 50;
  CHECK_THROWS_AS(estimate_sup_delta(spec, 1, 1), std::invalid_argument);
}
