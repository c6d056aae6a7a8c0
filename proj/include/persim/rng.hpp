#pragma once

#include <cmath>
#include <cstdint>

namespace persim {

// Counter-based random number machinery.
//
// Every random quantity in the toolkit is a pure function of
// (master seed, trial index, stream tag, counter).  Trials can therefore be
// evaluated by any number of workers in any order and still produce
// bit-identical results, and a scenery value at a lattice site can be
// recomputed on revisit instead of stored.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer (Vigna); bijective 64-bit mix with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// 128-bit stream key. Two words so that distinct streams are not merely
/// shifted copies of one splitmix sequence.
struct StreamKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
};

/// Value of stream `key` at position `ctr`. Two finalizer rounds.
constexpr std::uint64_t keyed_u64(StreamKey key, std::uint64_t ctr) noexcept {
  return mix64(mix64(key.lo + ctr * kGolden) ^ key.hi);
}

// Stream tags. Walk, scenery and environment randomness live in separate
// sub-streams of a trial so one can be frozen while the other varies.
enum : std::uint64_t {
  kStreamWalk = 0x77616c6bull,
  kStreamScenery = 0x7363656eull,
  kStreamEnvironment = 0x656e7669ull,
  kStreamGaussCore = 0x67617573ull,
};

/// Derive the sub-stream key for (master seed, trial, tag).
constexpr StreamKey derive_stream(std::uint64_t master, std::uint64_t trial,
                                  std::uint64_t tag) noexcept {
  const std::uint64_t lo = mix64(mix64(mix64(master) + trial) + tag);
  const std::uint64_t hi = mix64(lo ^ 0xD1B54A32D192ED03ull);
  return StreamKey{hi, lo};
}

/// Uniform in [0,1) from 53 random bits.
constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Uniform in (0,1]; safe under log().
constexpr double to_unit_pos(std::uint64_t x) noexcept {
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

/// Sequential view of a stream: hands out consecutive counter positions.
class Rng {
 public:
  explicit Rng(StreamKey key) noexcept : key_(key) {}

  std::uint64_t next_u64() noexcept { return keyed_u64(key_, ctr_++); }

  double uniform() noexcept { return to_unit(next_u64()); }        // [0,1)
  double uniform_pos() noexcept { return to_unit_pos(next_u64()); }  // (0,1]

  /// Standard normal via the Marsaglia polar method; pairs cached.
  double normal() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double w = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * w;
    have_spare_ = true;
    return u * w;
  }

  double exponential() noexcept { return -std::log(uniform_pos()); }

  /// Fair +/-1.
  int pm1() noexcept { return (next_u64() & 1ull) ? 1 : -1; }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Uniform integer in [0, m); m small (bias < 2^-57 for m <= 64).
  std::uint32_t below(std::uint32_t m) noexcept {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * m) >> 64);
  }

 private:
  StreamKey key_;
  std::uint64_t ctr_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Keyed (stateless) site draws used by sceneries and environments: the value
// at a site depends only on (stream key, site), never on visit order.

inline constexpr std::uint64_t kSiteSaltA = 0xA0761D6478BD642Full;
inline constexpr std::uint64_t kSiteSaltB = 0xE7037ED1A0B428DBull;

inline std::uint64_t site_u64(StreamKey key, std::uint64_t site,
                              std::uint64_t salt) noexcept {
  return keyed_u64(StreamKey{key.hi ^ salt, key.lo}, site);
}

/// Standard normal attached to a site.
inline double site_normal(StreamKey key, std::uint64_t site) noexcept {
  const double u1 = to_unit_pos(site_u64(key, site, kSiteSaltA));
  const double u2 = to_unit(site_u64(key, site, kSiteSaltB));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586476925286766559 * u2);
}

// Packed lattice coordinates -> 64-bit site index (exact, no aliasing).
// d=1 uses the full word; d=2 gets 32 bits per axis; d=3 gets 21.

constexpr std::uint64_t zigzag(std::int64_t v) noexcept {
  return (static_cast<std::uint64_t>(v) << 1) ^
         static_cast<std::uint64_t>(v >> 63);
}

constexpr std::uint64_t pack_site(const std::int64_t* coords, int dim) noexcept {
  if (dim == 1) return zigzag(coords[0]);
  if (dim == 2) return (zigzag(coords[0]) << 32) | (zigzag(coords[1]) & 0xFFFFFFFFull);
  return (zigzag(coords[0]) << 42) | ((zigzag(coords[1]) & 0x1FFFFFull) << 21) |
         (zigzag(coords[2]) & 0x1FFFFFull);
}

}  // namespace persim
