#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "persim/rng.hpp"

namespace persim {

enum class WalkKind { simple, lazy, stable };

/// Random walk on Z^d started at 0 with i.i.d. increments.
struct WalkSpec {
  int dimension = 1;            // d in {1,2,3}
  WalkKind kind = WalkKind::simple;
  double hold = 0.0;            // lazy: P(no move)
  double alpha = 0.0;           // stable: index in (1,2); d = 1 only
  std::int64_t length = 1;      // steps n

  void validate() const;
};

/// Symmetric alpha-stable draw, Chambers-Mallows-Stuck transform, standard
/// scale (characteristic function e^{-|t|^alpha}); alpha in (1,2]. At
/// alpha = 2 this is Gaussian with variance 2.
double sample_stable_step(double alpha, Rng& rng);

/// Streaming increment generator; one instance per trial.
class WalkStepper {
 public:
  WalkStepper(const WalkSpec& spec, StreamKey key);

  /// Advance S by one step.
  void step();

  const std::int64_t* position() const { return pos_.data(); }
  std::int64_t x() const { return pos_[0]; }
  std::uint64_t packed() const { return pack_site(pos_.data(), dim_); }
  int dimension() const { return dim_; }

 private:
  Rng rng_;
  std::array<std::int64_t, 3> pos_{0, 0, 0};
  int dim_;
  WalkKind kind_;
  double hold_;
  double alpha_;
};

/// Full lattice path S_0..S_n, coordinates flattened d-major.
struct LatticePath {
  int dimension = 1;
  std::int64_t steps = 0;
  std::vector<std::int64_t> coords;  // (steps+1) * dimension entries

  const std::int64_t* at(std::int64_t k) const { return coords.data() + k * dimension; }
};

LatticePath sample_walk(const WalkSpec& spec, StreamKey key);

/// Occupation statistics of a walk path: R_n counts distinct sites among
/// S_1..S_n, V_n = sum_y N_n(y)^2, V_n(beta) = sum_y N_n(y)^beta.
struct OccupationStats {
  std::int64_t walk_range = 0;
  std::int64_t self_intersections = 0;
  double v_beta = 0.0;
};

OccupationStats occupation_stats(const LatticePath& path, double beta);

}  // namespace persim
