#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace persim {

/// Exact rational arithmetic for the enumeration oracle. All branch weights
/// in the supported systems are rational, so probabilities come out exact.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d);

  static Rational zero() { return Rational(); }
  static Rational one() { return Rational(1); }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }

  double to_double() const;
  std::string to_string() const;

  /// Exact value as (num, den) in lowest terms; both fit in int64 for the
  /// enumerations the budget allows.
  std::int64_t num_i64() const;
  std::int64_t den_i64() const;

 private:
  Rational(__int128 n, __int128 d, bool) : num_(n), den_(d) {}
  void normalize();
  __int128 num_;
  __int128 den_;
};

/// Discrete systems the oracle can enumerate exhaustively.
struct OracleSystem {
  enum class Kind { simple_walk, lazy_walk, rwrs, mdm };
  enum class Scenery { rademacher, lazy_rademacher };

  Kind kind = Kind::simple_walk;
  Rational hold = Rational(0);      // lazy walk hold probability
  bool rwrs_lazy_walk = false;      // rwrs: lazy instead of simple driving walk
  Scenery scenery = Scenery::rademacher;
  Rational q = Rational(1, 2);      // lazy_rademacher P(xi = 0)
  Rational p = Rational(1, 3);      // mdm horizontal probability

  std::string name() const;
};

/// Everything one exhaustive sweep knows about a system at horizon n.
struct OracleSummary {
  std::int64_t n = 0;
  std::uint64_t leaves = 0;                 // enumerated full branches
  Rational p_persist;                       // P(max_{1..n} Z <= level)
  Rational p_persist_and_censored;          // P(T_0 > n and Z_1 <= level)
  std::vector<Rational> t0_tail;            // P(T_0 > k), k = 0..n
  Rational expected_range;                  // E #{Z_0..Z_n}
  Rational expected_max_0n;                 // E max_{k=0..n} Z_k
  Rational expected_max_1n;
  bool range_identity_all_paths = false;    // range == hull width on every path
  Rational total_weight;                    // sanity: must equal 1
};

/// Exhaustive enumeration over all move sequences and all lazily assigned
/// scenery/orientation values, each branch weighted by its probability.
/// Throws when n > 8 or the 1e8 branch budget would be exceeded.
OracleSummary enumerate_system(const OracleSystem& system, std::int64_t n,
                               std::int64_t level);

struct ExactResult {
  Rational probability;
  std::uint64_t enumerated_states = 0;
};

/// Exact P(max_{1..n} Z <= level).
ExactResult brute_force_persistence(const OracleSystem& system, std::int64_t n,
                                    std::int64_t level);

/// Identity verification report. Brute-force mode (trials = 0) checks the
/// exact identities; Monte Carlo mode counts events over a shared trial set.
struct IdentityCheck {
  enum class Status { pass, fail, not_applicable };
  std::string name;
  Status status = Status::not_applicable;
  std::string lhs;
  std::string rhs;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

IdentityReport verify_identities(const OracleSystem& system, std::int64_t n,
                                 std::int64_t trials, std::uint64_t seed,
                                 int workers = 0);

struct ProcessSpec;

/// Monte Carlo identity verification on a general generator. Path identities
/// are marked not-applicable when increments can leave {-1,0,1}.
IdentityReport verify_identities(const ProcessSpec& process, std::int64_t n,
                                 std::int64_t trials, std::uint64_t seed,
                                 int workers = 0);

}  // namespace persim
