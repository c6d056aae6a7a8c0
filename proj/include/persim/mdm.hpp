#pragma once

#include <cstdint>

#include "persim/path.hpp"
#include "persim/rng.hpp"

namespace persim {

/// Matheron-de Marsily walk on Z^2: horizontal lines carry i.i.d. fair
/// orientations; a step moves along the current line's orientation with
/// probability p, else up/down with probability (1-p)/2 each.
struct MdmSpec {
  double p = 1.0 / 3.0;
  std::int64_t length = 1;

  void validate() const;
};

/// One annealed trial: fresh environment and fresh walk.
struct MdmTrial {
  PathStats first_coord_stats;          // stats of M^(1)
  FirstReturn t0_first = FirstReturn::not_applicable();  // T_0^(1)
  std::int64_t vertical_line_range = 0;  // distinct x among M_0..M_n
};

/// Streaming simulator of the first coordinate. The environment is realized
/// lazily: line y's orientation is keyed on (env stream, y), so revisits are
/// consistent and nothing is stored. `flip` negates every orientation, which
/// is the antithetic pairing used by the 1/2-identity check.
class MdmStepper {
 public:
  MdmStepper(const MdmSpec& spec, StreamKey move_key, StreamKey env_key,
             bool flip = false);

  /// Advance one step; returns the new first coordinate.
  std::int64_t step();

  std::int64_t x() const { return x_; }

 private:
  Rng moves_;
  StreamKey env_key_;
  double p_;
  std::int64_t x_ = 0;
  std::int64_t y_ = 0;
  double sign_;
};

MdmTrial sample_mdm(const MdmSpec& spec, StreamKey move_key, StreamKey env_key);

/// Survival trial with early exit at the first return of M^(1) to 0; the
/// expected work drops from n to O(n^{3/4}).
FirstReturn mdm_survival(const MdmSpec& spec, StreamKey move_key,
                         StreamKey env_key, bool flip = false);

/// Antithetic pair (same moves, flipped orientations) reduced to the events
/// the identity checks need.
struct MdmPairOutcome {
  bool survived = false;       // shared by both members
  bool plain_max_le = false;   // {max M^(1) <= level} for the unflipped member
  bool flipped_max_le = false; // same event for the flipped member
};

MdmPairOutcome mdm_pair_events(const MdmSpec& spec, StreamKey move_key,
                               StreamKey env_key, double level);

/// K_p = p (1-p)^{-1/4} and kappa = (3/2) K_p E[sup Delta], the predicted
/// limit of n^{1/4} P(T_0^(1) > n).
struct MdmConstants {
  double k_p = 0.0;
  double kappa = 0.0;
};

MdmConstants mdm_constants(double p, double sup_delta_mean);

}  // namespace persim
