#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace persim {

/// One realized trajectory Z_0..Z_n (Z_0 = 0). `integer_valued` marks paths
/// whose entries are exact integers stored in doubles.
struct PathSample {
  std::vector<double> values;
  bool integer_valued = false;

  std::int64_t steps() const {
    return static_cast<std::int64_t>(values.size()) - 1;
  }
  void validate() const;
};

/// First return time of Z to 0. Right-censored when no return happens within
/// the horizon; not applicable for real-valued paths, where exact equality
/// with 0 is meaningless.
class FirstReturn {
 public:
  static FirstReturn at(std::int64_t step) { return FirstReturn(kReturned, step); }
  static FirstReturn censored() { return FirstReturn(kCensored, 0); }
  static FirstReturn not_applicable() { return FirstReturn(kNotApplicable, 0); }

  bool returned() const { return state_ == kReturned; }
  bool is_censored() const { return state_ == kCensored; }
  bool applicable() const { return state_ != kNotApplicable; }

  /// Return step; throws unless returned().
  std::int64_t step() const {
    if (state_ != kReturned)
      throw std::logic_error("first_return: no return observed");
    return step_;
  }

  bool operator==(const FirstReturn&) const = default;

 private:
  enum State { kReturned, kCensored, kNotApplicable };
  FirstReturn(State s, std::int64_t k) : state_(s), step_(k) {}
  State state_;
  std::int64_t step_;
};

/// Exact per-path statistics over k = 1..n (range counts include Z_0).
struct PathStats {
  double max_1n = 0;
  double min_1n = 0;
  FirstReturn first_return = FirstReturn::not_applicable();
  /// #{Z_0,...,Z_n}; present only for integer-valued paths.
  std::optional<std::int64_t> range_count;
  /// #{floor(Z_0),...,floor(Z_n)}; defined for any path.
  std::int64_t floor_range = 0;
};

/// Compute all PathStats fields in one traversal.
/// Throws std::invalid_argument("degenerate path") when n = 0.
PathStats path_stats(const PathSample& path);

/// The persistence event {max_{1..n} Z_k <= level}.
inline bool persistence_event(const PathStats& stats, double level) {
  return stats.max_1n <= level;
}

}  // namespace persim
