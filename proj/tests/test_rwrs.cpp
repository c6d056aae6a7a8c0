#include <doctest.h>

#include <cmath>
#include <span>
#include <vector>

#include "persim/oracle.hpp"
#include "persim/rwrs.hpp"
#include "persim/stats.hpp"

using namespace persim;

namespace {

RwrsSpec d1_rademacher(std::int64_t n) {
  RwrsSpec spec;
  spec.walk.dimension = 1;
  spec.walk.kind = WalkKind::simple;
  spec.walk.length = n;
  spec.scenery.law = SceneryLaw::rademacher;
  spec.length = n;
  return spec;
}

}  // namespace

TEST_CASE("revisits reuse the same scenery value") {
  // Z_n must equal sum_y xi_y N_n(y) with xi re-read per site.
  RwrsSpec spec = d1_rademacher(400);
  for (int t = 0; t < 50; ++t) {
    const StreamKey walk_key = derive_stream(100, t, kStreamWalk);
    const StreamKey scen_key = derive_stream(100, t, kStreamScenery);
    const PathSample z = sample_rwrs(spec, walk_key, scen_key);
    const LatticePath s = sample_walk(spec.walk, walk_key);
    double recomposed = 0;
    for (std::int64_t k = 1; k <= spec.length; ++k)
      recomposed += scenery_value(spec.scenery, scen_key,
                                  pack_site(s.at(k), 1));
    CHECK(z.values.back() == doctest::Approx(recomposed).epsilon(1e-12));
  }
}

TEST_CASE("rademacher RWRS, n=1: P(Z_1 <= -1) = 1/2") {
  ProcessSpec spec;
  spec.gen = d1_rademacher(1);
  const PersistenceEstimate est = estimate_persistence(spec, 1, -1, 100000, 11, 2);
  CHECK(est.ci_low <= 0.5);
  CHECK(est.ci_high >= 0.5);
}

TEST_CASE("rademacher RWRS, n=2: Monte Carlo meets the enumerated 1/4") {
  OracleSystem sys;
  sys.kind = OracleSystem::Kind::rwrs;
  const ExactResult exact = brute_force_persistence(sys, 2, -1);
  CHECK(exact.probability == Rational(1, 4));

  ProcessSpec spec;
  spec.gen = d1_rademacher(2);
  const PersistenceEstimate est = estimate_persistence(spec, 2, -1, 100000, 12, 2);
  CHECK(est.ci_low <= 0.25);
  CHECK(est.ci_high >= 0.25);
}

TEST_CASE("scenery symmetry makes Z_n centered") {
  RwrsSpec spec = d1_rademacher(256);
  const int trials = 20000;
  double sum = 0, sum_sq = 0;
  for (int t = 0; t < trials; ++t) {
    const PathSample z = sample_rwrs(spec, derive_stream(13, t, kStreamWalk),
                                     derive_stream(13, t, kStreamScenery));
    sum += z.values.back();
    sum_sq += z.values.back() * z.values.back();
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
  CHECK(std::fabs(mean) < 3.0 * se);
}

TEST_CASE("increments are stationary: Z_{k+m}-Z_k matches Z_m in law") {
  const std::int64_t m = 16, horizon = 128;
  RwrsSpec spec = d1_rademacher(horizon);
  const int samples = 10000;
  std::vector<double> shifted, fresh;
  Rng offset_rng(derive_stream(14, 0, 99));
  for (int t = 0; t < samples; ++t) {
    const PathSample z = sample_rwrs(spec, derive_stream(14, t, kStreamWalk),
                                     derive_stream(14, t, kStreamScenery));
    const std::int64_t k = offset_rng.below(horizon - m);
    shifted.push_back(z.values[k + m] - z.values[k]);
  }
  RwrsSpec short_spec = d1_rademacher(m);
  for (int t = 0; t < samples; ++t) {
    const PathSample z =
        sample_rwrs(short_spec, derive_stream(15, t, kStreamWalk),
                    derive_stream(15, t, kStreamScenery));
    fresh.push_back(z.values.back());
  }
  CHECK(ks_two_sample_pvalue(shifted, fresh) > 0.01);
}

TEST_CASE("exact event identity holds on every lazy_rademacher trial") {
  OracleSystem sys;
  sys.kind = OracleSystem::Kind::rwrs;
  sys.scenery = OracleSystem::Scenery::lazy_rademacher;
  const IdentityReport report = verify_identities(sys, 64, 10000, 16, 2);
  for (const auto& c : report.checks)
    CHECK(c.status != IdentityCheck::Status::fail);
}

TEST_CASE("E[range] equals the survival tail sum, exactly, n <= 6") {
  OracleSystem sys;
  sys.kind = OracleSystem::Kind::rwrs;
  sys.scenery = OracleSystem::Scenery::lazy_rademacher;
  for (std::int64_t n = 1; n <= 6; ++n) {
    const OracleSummary s = enumerate_system(sys, n, -1);
    Rational tail_sum;
    for (const auto& t : s.t0_tail) tail_sum += t;
    CHECK(s.expected_range == tail_sum);
    CHECK(s.total_weight == Rational(1));
  }
}

TEST_CASE("max inequality n P(max <= -1) <= E[max], exactly, n <= 6") {
  OracleSystem sys;
  sys.kind = OracleSystem::Kind::rwrs;
  for (std::int64_t n = 1; n <= 6; ++n) {
    const OracleSummary s = enumerate_system(sys, n, -1);
    CHECK(Rational(n) * s.p_persist <= s.expected_max_0n);
  }
}

TEST_CASE("scaling table: the documented spot values") {
  WalkSpec simple1;
  simple1.dimension = 1;
  ScenerySpec rademacher;

  const ScalingSequence s16 = scaling_for(simple1, rademacher, 16);
  CHECK(s16.a_n == doctest::Approx(8.0).epsilon(1e-12));  // 16^{3/4}
  CHECK(s16.exponent == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(s16.gamma == doctest::Approx(0.75).epsilon(1e-12));

  WalkSpec simple3;
  simple3.dimension = 3;
  ScenerySpec gaussian;
  gaussian.law = SceneryLaw::gaussian;
  const ScalingSequence s100 = scaling_for(simple3, gaussian, 100);
  CHECK(s100.a_n == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(s100.exponent == doctest::Approx(0.5).epsilon(1e-12));

  WalkSpec simple2;
  simple2.dimension = 2;
  const double e2 = std::exp(2.0);
  CHECK(scaling_a(simple2, rademacher, e2) ==
        doctest::Approx(std::exp(1.0) * std::sqrt(2.0)).epsilon(1e-12));

  WalkSpec stable;
  stable.dimension = 1;
  stable.kind = WalkKind::stable;
  stable.alpha = 1.5;
  const ScalingSequence st = scaling_for(stable, rademacher, 64);
  CHECK(st.gamma == doctest::Approx(1.0 - 1.0 / 1.5 + 1.0 / 3.0).epsilon(1e-12));
  CHECK(st.exponent == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  ScenerySpec heavy;
  heavy.law = SceneryLaw::symmetric_stable;
  heavy.beta = 1.5;
  const ScalingSequence sh = scaling_for(simple1, heavy, 64);
  CHECK(sh.gamma == doctest::Approx(1.0 - 0.5 + 1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("uncovered regimes are rejected") {
  WalkSpec bad;
  bad.dimension = 2;
  bad.kind = WalkKind::stable;
  bad.alpha = 1.5;
  ScenerySpec rademacher;
  CHECK_THROWS_WITH_AS(scaling_for(bad, rademacher, 16), "regime not covered",
                       std::invalid_argument);
}

TEST_CASE("lazy_rademacher default q gives P(0) about 1/2") {
  ScenerySpec s;
  s.law = SceneryLaw::lazy_rademacher;
  const StreamKey key = derive_stream(18, 0, kStreamScenery);
  int zeros = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i)
    zeros += scenery_value(s, key, static_cast<std::uint64_t>(i)) == 0.0;
  CHECK(std::fabs(zeros - n / 2.0) < 3.0 * std::sqrt(n / 4.0));
}

TEST_CASE("spec validation") {
  RwrsSpec spec = d1_rademacher(0);
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  ScenerySpec bad;
  bad.law = SceneryLaw::symmetric_stable;
  bad.beta = 2.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
