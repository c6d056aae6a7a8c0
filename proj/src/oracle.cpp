#include "persim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "persim/parallel.hpp"
#include "persim/process.hpp"
#include "persim/stats.hpp"

namespace persim {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string i128_to_string(__int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  const __int128 g = gcd128(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::operator+(const Rational& o) const {
  Rational r(num_ * o.den_ + o.num_ * den_, den_ * o.den_, true);
  r.normalize();
  return r;
}

Rational Rational::operator-(const Rational& o) const {
  Rational r(num_ * o.den_ - o.num_ * den_, den_ * o.den_, true);
  r.normalize();
  return r;
}

Rational Rational::operator*(const Rational& o) const {
  Rational r(num_ * o.num_, den_ * o.den_, true);
  r.normalize();
  return r;
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
  Rational r(num_ * o.den_, den_ * o.num_, true);
  r.normalize();
  return r;
}

bool Rational::operator<(const Rational& o) const {
  return num_ * o.den_ < o.num_ * den_;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (den_ == 1) return i128_to_string(num_);
  return i128_to_string(num_) + "/" + i128_to_string(den_);
}

std::int64_t Rational::num_i64() const {
  if (num_ > INT64_MAX || num_ < INT64_MIN)
    throw std::overflow_error("Rational: numerator exceeds int64");
  return static_cast<std::int64_t>(num_);
}

std::int64_t Rational::den_i64() const {
  if (den_ > INT64_MAX) throw std::overflow_error("Rational: denominator exceeds int64");
  return static_cast<std::int64_t>(den_);
}

std::string OracleSystem::name() const {
  switch (kind) {
    case Kind::simple_walk: return "simple_walk";
    case Kind::lazy_walk: return "lazy_walk";
    case Kind::rwrs:
      return std::string(rwrs_lazy_walk ? "rwrs_lazy" : "rwrs") +
             (scenery == Scenery::rademacher ? "_rademacher" : "_lazy_rademacher");
    case Kind::mdm: return "mdm";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kBranchBudget = 100000000ull;

/// Shared accumulator over enumerated full paths.
struct Accumulator {
  std::int64_t n;
  std::int64_t level;
  std::uint64_t leaves = 0;
  Rational p_persist;
  Rational p_persist_and_censored;
  std::vector<Rational> t0_tail;
  Rational expected_range;
  Rational expected_max_0n;
  Rational expected_max_1n;
  bool range_identity_all_paths = true;
  Rational total_weight;

  explicit Accumulator(std::int64_t n_, std::int64_t level_)
      : n(n_), level(level_), t0_tail(static_cast<std::size_t>(n_) + 1) {}

  void leaf(const Rational& w, const std::vector<std::int64_t>& z) {
    if (++leaves > kBranchBudget)
      throw std::runtime_error("enumeration budget exceeded");
    total_weight += w;

    std::int64_t t0 = n + 1;
    std::int64_t max0 = 0, min0 = 0, max1 = z[1];
    for (std::int64_t k = 1; k <= n; ++k) {
      const std::int64_t v = z[static_cast<std::size_t>(k)];
      if (v == 0 && t0 > n) t0 = k;
      max0 = std::max(max0, v);
      min0 = std::min(min0, v);
      max1 = std::max(max1, v);
    }
    for (std::int64_t k = 0; k <= n && k < t0; ++k)
      t0_tail[static_cast<std::size_t>(k)] += w;

    std::vector<std::int64_t> sorted(z);
    std::sort(sorted.begin(), sorted.end());
    const std::int64_t range =
        std::unique(sorted.begin(), sorted.end()) - sorted.begin();

    if (range != max0 - min0 + 1) range_identity_all_paths = false;

    if (max1 <= level) p_persist += w;
    if (t0 > n && z[1] <= level) p_persist_and_censored += w;
    expected_range += w * Rational(range);
    expected_max_0n += w * Rational(max0);
    expected_max_1n += w * Rational(max1);
  }
};

/// Lazily assigned environment values (scenery or line orientations) with
/// backtracking.
class Assignment {
 public:
  bool lookup(std::int64_t site, std::int64_t& value) const {
    for (const auto& [s, v] : entries_)
      if (s == site) {
        value = v;
        return true;
      }
    return false;
  }
  void push(std::int64_t site, std::int64_t value) { entries_.emplace_back(site, value); }
  void pop() { entries_.pop_back(); }

 private:
  std::vector<std::pair<std::int64_t, std::int64_t>> entries_;
};

struct Enumerator {
  const OracleSystem& sys;
  std::int64_t n;
  Accumulator& acc;
  std::vector<std::int64_t> z;  // Z_0..Z_n (prefix filled to depth)
  Assignment env;
  std::int64_t walk_pos = 0;  // rwrs driving walk / mdm vertical line

  Enumerator(const OracleSystem& s, std::int64_t n_, Accumulator& a)
      : sys(s), n(n_), acc(a), z(static_cast<std::size_t>(n_) + 1, 0) {}

  void run() { descend(1, Rational::one()); }

  // Branch over the scenery/orientation value at `site` if unassigned, then
  // continue with the chosen value.
  template <typename Next>
  void with_env_value(std::int64_t site, bool orientation, const Rational& w,
                      Next&& next) {
    std::int64_t v;
    if (env.lookup(site, v)) {
      next(v, w);
      return;
    }
    if (orientation || sys.scenery == OracleSystem::Scenery::rademacher) {
      const Rational half(1, 2);
      for (std::int64_t cand : {-1, 1}) {
        env.push(site, cand);
        next(cand, w * half);
        env.pop();
      }
    } else {
      const Rational off = sys.q;
      const Rational side = (Rational::one() - sys.q) * Rational(1, 2);
      env.push(site, 0);
      next(0, w * off);
      env.pop();
      for (std::int64_t cand : {-1, 1}) {
        env.push(site, cand);
        next(cand, w * side);
        env.pop();
      }
    }
  }

  void descend(std::int64_t k, const Rational& w) {
    if (k > n) {
      acc.leaf(w, z);
      return;
    }
    const std::size_t ki = static_cast<std::size_t>(k);

    switch (sys.kind) {
      case OracleSystem::Kind::simple_walk: {
        const Rational half(1, 2);
        for (std::int64_t step : {-1, 1}) {
          z[ki] = z[ki - 1] + step;
          descend(k + 1, w * half);
        }
        break;
      }
      case OracleSystem::Kind::lazy_walk: {
        const Rational side = (Rational::one() - sys.hold) * Rational(1, 2);
        z[ki] = z[ki - 1];
        descend(k + 1, w * sys.hold);
        for (std::int64_t step : {-1, 1}) {
          z[ki] = z[ki - 1] + step;
          descend(k + 1, w * side);
        }
        break;
      }
      case OracleSystem::Kind::rwrs: {
        auto move_to = [&](std::int64_t new_pos, const Rational& mw) {
          const std::int64_t saved = walk_pos;
          walk_pos = new_pos;
          with_env_value(new_pos, /*orientation=*/false, mw,
                         [&](std::int64_t xi, const Rational& bw) {
                           z[ki] = z[ki - 1] + xi;
                           descend(k + 1, bw);
                         });
          walk_pos = saved;
        };
        if (sys.rwrs_lazy_walk) {
          const Rational side = (Rational::one() - sys.hold) * Rational(1, 2);
          move_to(walk_pos, w * sys.hold);
          move_to(walk_pos - 1, w * side);
          move_to(walk_pos + 1, w * side);
        } else {
          const Rational half(1, 2);
          move_to(walk_pos - 1, w * half);
          move_to(walk_pos + 1, w * half);
        }
        break;
      }
      case OracleSystem::Kind::mdm: {
        // Horizontal move along the current line's orientation.
        with_env_value(walk_pos, /*orientation=*/true, w * sys.p,
                       [&](std::int64_t xi, const Rational& bw) {
                         z[ki] = z[ki - 1] + xi;
                         descend(k + 1, bw);
                       });
        // Vertical moves keep the first coordinate.
        const Rational side = (Rational::one() - sys.p) * Rational(1, 2);
        for (std::int64_t dy : {-1, 1}) {
          const std::int64_t saved = walk_pos;
          walk_pos += dy;
          z[ki] = z[ki - 1];
          descend(k + 1, w * side);
          walk_pos = saved;
        }
        break;
      }
    }
  }
};

}  // namespace

OracleSummary enumerate_system(const OracleSystem& system, std::int64_t n,
                               std::int64_t level) {
  if (n < 1 || n > 8)
    throw std::invalid_argument("enumerate_system: n must lie in [1,8]");
  Accumulator acc(n, level);
  Enumerator e(system, n, acc);
  e.run();

  OracleSummary out;
  out.n = n;
  out.leaves = acc.leaves;
  out.p_persist = acc.p_persist;
  out.p_persist_and_censored = acc.p_persist_and_censored;
  out.t0_tail = acc.t0_tail;
  out.expected_range = acc.expected_range;
  out.expected_max_0n = acc.expected_max_0n;
  out.expected_max_1n = acc.expected_max_1n;
  out.range_identity_all_paths = acc.range_identity_all_paths;
  out.total_weight = acc.total_weight;
  return out;
}

ExactResult brute_force_persistence(const OracleSystem& system, std::int64_t n,
                                    std::int64_t level) {
  const OracleSummary s = enumerate_system(system, n, level);
  return ExactResult{s.p_persist, s.leaves};
}

bool IdentityReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status == IdentityCheck::Status::fail) return false;
  return true;
}

namespace {

IdentityCheck check(std::string name, bool ok, std::string lhs, std::string rhs) {
  IdentityCheck c;
  c.name = std::move(name);
  c.status = ok ? IdentityCheck::Status::pass : IdentityCheck::Status::fail;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

IdentityCheck not_applicable(std::string name) {
  IdentityCheck c;
  c.name = std::move(name);
  c.status = IdentityCheck::Status::not_applicable;
  return c;
}

IdentityReport verify_brute(const OracleSystem& system, std::int64_t n) {
  const OracleSummary s = enumerate_system(system, n, -1);
  IdentityReport report;

  report.checks.push_back(check("range_eq_hull", s.range_identity_all_paths,
                                "per-path range", "max - min + 1"));

  Rational sum_tail;
  for (const auto& t : s.t0_tail) sum_tail += t;
  report.checks.push_back(check("expected_range_eq_tail_sum",
                                s.expected_range == sum_tail,
                                s.expected_range.to_string(), sum_tail.to_string()));

  const Rational half_tail = s.t0_tail.back() * Rational(1, 2);
  report.checks.push_back(check("persistence_eq_half_survival",
                                s.p_persist == half_tail,
                                s.p_persist.to_string(), half_tail.to_string()));

  report.checks.push_back(check(
      "event_eq_censored_and_z1_neg", s.p_persist == s.p_persist_and_censored,
      s.p_persist.to_string(), s.p_persist_and_censored.to_string()));

  const Rational lhs = Rational(n) * s.p_persist;
  report.checks.push_back(check("n_p_le_expected_max", lhs <= s.expected_max_0n,
                                lhs.to_string(), s.expected_max_0n.to_string()));

  bool mono = true;
  for (std::size_t k = 1; k < s.t0_tail.size(); ++k)
    if (!(s.t0_tail[k] <= s.t0_tail[k - 1])) mono = false;
  report.checks.push_back(
      check("t0_tail_non_increasing", mono, "P(T_0>k)", "monotone"));

  return report;
}

ProcessSpec to_process(const OracleSystem& system, std::int64_t n) {
  ProcessSpec spec;
  switch (system.kind) {
    case OracleSystem::Kind::simple_walk: {
      WalkSpec w;
      w.dimension = 1;
      w.kind = WalkKind::simple;
      w.length = n;
      spec.gen = w;
      break;
    }
    case OracleSystem::Kind::lazy_walk: {
      WalkSpec w;
      w.dimension = 1;
      w.kind = WalkKind::lazy;
      w.hold = system.hold.to_double();
      w.length = n;
      spec.gen = w;
      break;
    }
    case OracleSystem::Kind::rwrs: {
      RwrsSpec r;
      r.walk.dimension = 1;
      r.walk.kind = system.rwrs_lazy_walk ? WalkKind::lazy : WalkKind::simple;
      r.walk.hold = system.rwrs_lazy_walk ? system.hold.to_double() : 0.0;
      r.walk.length = n;
      r.scenery.law = system.scenery == OracleSystem::Scenery::rademacher
                          ? SceneryLaw::rademacher
                          : SceneryLaw::lazy_rademacher;
      r.scenery.q = system.q.to_double();
      r.length = n;
      spec.gen = r;
      break;
    }
    case OracleSystem::Kind::mdm: {
      MdmSpec m;
      m.p = system.p.to_double();
      m.length = n;
      spec.gen = m;
      break;
    }
  }
  return spec;
}

/// Increments almost surely in {-1,0,1}: the hypothesis behind the path-exact
/// range and no-jump identities.
bool pm01_increments(const ProcessSpec& spec) {
  if (std::holds_alternative<MdmSpec>(spec.gen)) return true;
  if (const auto* w = std::get_if<WalkSpec>(&spec.gen))
    return w->dimension == 1 && w->kind != WalkKind::stable;
  if (const auto* r = std::get_if<RwrsSpec>(&spec.gen))
    return r->scenery.law == SceneryLaw::rademacher ||
           r->scenery.law == SceneryLaw::lazy_rademacher;
  return false;
}

IdentityReport verify_monte_carlo(const ProcessSpec& process, std::int64_t n,
                                  std::int64_t trials, std::uint64_t seed,
                                  int workers) {
  IdentityReport report;

  if (const auto* mdm = std::get_if<MdmSpec>(&process.gen)) {
    MdmSpec spec = *mdm;
    spec.length = n;

    struct PairSlot {
      std::uint8_t survived, plain_le, flipped_le, range_ok;
      double max0n;
    };
    std::vector<PairSlot> slots(static_cast<std::size_t>(trials));
    run_trial_blocks(trials, workers, 1, [&](std::int64_t first, std::int64_t last) {
      for (std::int64_t t = first; t < last; ++t) {
        const auto tt = static_cast<std::uint64_t>(t);
        const StreamKey move = derive_stream(seed, tt, kStreamWalk);
        const StreamKey env = derive_stream(seed, tt, kStreamEnvironment);
        const MdmPairOutcome pair = mdm_pair_events(spec, move, env, -1.0);
        const MdmTrial full = sample_mdm(spec, move, env);
        const auto& st = full.first_coord_stats;
        const std::int64_t hull =
            static_cast<std::int64_t>(std::max(0.0, st.max_1n)) -
            static_cast<std::int64_t>(std::min(0.0, st.min_1n)) + 1;
        slots[static_cast<std::size_t>(t)] = PairSlot{
            static_cast<std::uint8_t>(pair.survived),
            static_cast<std::uint8_t>(pair.plain_max_le),
            static_cast<std::uint8_t>(pair.flipped_max_le),
            static_cast<std::uint8_t>(full.vertical_line_range == hull),
            std::max(0.0, st.max_1n)};
      }
    });

    std::int64_t survived = 0, member_events = 0, range_bad = 0;
    double sum_max = 0.0;
    for (const auto& s : slots) {
      survived += s.survived;
      member_events += s.plain_le + s.flipped_le;
      range_bad += !s.range_ok;
      sum_max += s.max0n;
    }
    report.checks.push_back(check("range_eq_hull", range_bad == 0,
                                  std::to_string(trials - range_bad) + " ok",
                                  std::to_string(trials) + " paths"));
    report.checks.push_back(check("paired_half_identity",
                                  member_events == survived,
                                  std::to_string(member_events) + " member events",
                                  std::to_string(survived) + " surviving pairs"));
    const double p_hat = static_cast<double>(member_events) /
                         (2.0 * static_cast<double>(trials));
    const double mean_max = sum_max / static_cast<double>(trials);
    report.checks.push_back(check(
        "n_p_le_expected_max", static_cast<double>(n) * p_hat <= mean_max,
        std::to_string(static_cast<double>(n) * p_hat), std::to_string(mean_max)));
    return report;
  }

  if (!pm01_increments(process)) {
    // Real-valued or jumping systems: the path identities do not apply; the
    // max inequality still does.
    report.checks.push_back(not_applicable("range_eq_hull"));
    report.checks.push_back(not_applicable("event_eq_censored_and_z1_neg"));
    std::vector<double> max0(static_cast<std::size_t>(trials));
    std::vector<std::uint8_t> ev(static_cast<std::size_t>(trials));
    run_trial_blocks(trials, workers, 2, [&](std::int64_t first, std::int64_t last) {
      TrialContext ctx(process, n);
      for (std::int64_t t = first; t < last; ++t) {
        const double m = ctx.max_trial(seed, static_cast<std::uint64_t>(t));
        max0[static_cast<std::size_t>(t)] = std::max(0.0, m);
        ev[static_cast<std::size_t>(t)] = m <= -1.0;
      }
    });
    double mean_max = 0.0;
    std::int64_t events = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
      mean_max += max0[static_cast<std::size_t>(t)];
      events += ev[static_cast<std::size_t>(t)];
    }
    mean_max /= static_cast<double>(trials);
    const double p_hat = static_cast<double>(events) / static_cast<double>(trials);
    report.checks.push_back(check(
        "n_p_le_expected_max", static_cast<double>(n) * p_hat <= mean_max,
        std::to_string(static_cast<double>(n) * p_hat), std::to_string(mean_max)));
    return report;
  }

  const ProcessSpec& spec = process;
  struct Slot {
    std::uint8_t event_le, censored_and_neg, range_ok;
    double max0n;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(trials));
  run_trial_blocks(trials, workers, 1, [&](std::int64_t first, std::int64_t last) {
    for (std::int64_t t = first; t < last; ++t) {
      const PathSample path =
          sample_process(spec, n, seed, static_cast<std::uint64_t>(t));
      const PathStats st = path_stats(path);
      const bool ev = st.max_1n <= -1.0;
      const bool cen = st.first_return.is_censored() && path.values[1] <= -1.0;
      const std::int64_t hull =
          static_cast<std::int64_t>(std::max(0.0, st.max_1n)) -
          static_cast<std::int64_t>(std::min(0.0, st.min_1n)) + 1;
      slots[static_cast<std::size_t>(t)] =
          Slot{static_cast<std::uint8_t>(ev), static_cast<std::uint8_t>(cen),
               static_cast<std::uint8_t>(st.range_count && *st.range_count == hull),
               std::max(0.0, st.max_1n)};
    }
  });

  std::int64_t events = 0, censored = 0, range_bad = 0;
  double sum_max = 0.0;
  for (const auto& s : slots) {
    events += s.event_le;
    censored += s.censored_and_neg;
    range_bad += !s.range_ok;
    sum_max += s.max0n;
  }
  report.checks.push_back(check("range_eq_hull", range_bad == 0,
                                std::to_string(trials - range_bad) + " ok",
                                std::to_string(trials) + " paths"));
  report.checks.push_back(check("event_eq_censored_and_z1_neg", events == censored,
                                std::to_string(events) + " events",
                                std::to_string(censored) + " censored&neg"));
  const double p_hat = static_cast<double>(events) / static_cast<double>(trials);
  const double mean_max = sum_max / static_cast<double>(trials);
  report.checks.push_back(check(
      "n_p_le_expected_max", static_cast<double>(n) * p_hat <= mean_max,
      std::to_string(static_cast<double>(n) * p_hat), std::to_string(mean_max)));
  return report;
}

}  // namespace

IdentityReport verify_identities(const OracleSystem& system, std::int64_t n,
                                 std::int64_t trials, std::uint64_t seed,
                                 int workers) {
  if (trials == 0) return verify_brute(system, n);
  return verify_monte_carlo(to_process(system, n), n, trials, seed, workers);
}

IdentityReport verify_identities(const ProcessSpec& process, std::int64_t n,
                                 std::int64_t trials, std::uint64_t seed,
                                 int workers) {
  if (trials <= 0)
    throw std::invalid_argument(
        "verify_identities: Monte Carlo mode needs trials > 0");
  return verify_monte_carlo(process, n, trials, seed, workers);
}

}  // namespace persim
