#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "persim/path.hpp"
#include "persim/rng.hpp"
#include "persim/site_map.hpp"
#include "persim/walk.hpp"

namespace persim {

enum class SceneryLaw {
  rademacher,        // +/-1 fair
  lazy_rademacher,   // 0 with prob q, else +/-1 fair
  gaussian,          // standard normal
  bounded_uniform,   // uniform on [-1,1]
  symmetric_stable,  // S-alpha-S of index beta in (1,2)
};

/// i.i.d. centered field xi indexed by lattice sites.
struct ScenerySpec {
  SceneryLaw law = SceneryLaw::rademacher;
  double q = 0.5;     // lazy_rademacher: P(xi = 0)
  double beta = 1.5;  // symmetric_stable index

  void validate() const;
  bool integer_valued() const {
    return law == SceneryLaw::rademacher || law == SceneryLaw::lazy_rademacher;
  }
  /// Tail index used by the scaling regimes (2 for all square-integrable laws).
  double tail_index() const {
    return law == SceneryLaw::symmetric_stable ? beta : 2.0;
  }
};

/// Value of the scenery at a packed site. Pure in (key, site): revisits and
/// re-runs see the same value with no storage.
double scenery_value(const ScenerySpec& spec, StreamKey key, std::uint64_t site);

/// Random walk in random scenery Z_n = sum_{i<=n} xi_{S_i}.
struct RwrsSpec {
  WalkSpec walk;
  ScenerySpec scenery;
  std::int64_t length = 1;

  void validate() const;
};

/// Streaming evaluator; walk and scenery use independent sub-streams of the
/// trial so either can be frozen while the other varies.
class RwrsStepper {
 public:
  /// `scenery_scale` multiplies every field value; the default is the spec'd
  /// process, the hook exists for linearity checks.
  RwrsStepper(const RwrsSpec& spec, StreamKey walk_key, StreamKey scenery_key,
              double scenery_scale = 1.0);

  /// Advance one step and return the new Z_k.
  double step();

  double z() const { return z_; }

 private:
  double lookup_scenery();

  const RwrsSpec& spec_;
  WalkStepper walk_;
  StreamKey scenery_key_;
  double scale_;
  // d = 1 bounded-step walks cache scenery values in a dense stamped line;
  // the cache only avoids recomputation, values stay keyed by site.
  std::vector<double> line_value_;
  std::vector<std::uint32_t> line_stamp_;
  std::int64_t line_offset_ = 0;
  bool use_line_ = false;
  double z_ = 0.0;
};

PathSample sample_rwrs(const RwrsSpec& spec, StreamKey walk_key, StreamKey scenery_key);

/// Scaling regime of max_{k<=n} Z_k for a (walk, scenery) pair.
enum class ScalingRegime { d1_alpha, critical, transient };

struct ScalingSequence {
  ScalingRegime regime;
  double a_n = 0.0;       // critical regime carries the sqrt(log n) factor
  double gamma = 0.0;     // regular-variation exponent of a_n (log factor aside)
  double exponent = 0.0;  // predicted persistence exponent 1 - gamma
  bool log_factor = false;
};

/// a_n and the predicted persistence exponent for the pair; throws
/// std::invalid_argument("regime not covered") for unsupported combinations.
ScalingSequence scaling_for(const WalkSpec& walk, const ScenerySpec& scenery,
                            std::int64_t n);

/// a_n as a function of a real argument (the formulas behind scaling_for).
double scaling_a(const WalkSpec& walk, const ScenerySpec& scenery, double n);

}  // namespace persim
