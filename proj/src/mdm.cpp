#include "persim/mdm.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace persim {

void MdmSpec::validate() const {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("MdmSpec: p must lie in (0,1)");
  if (length < 1) throw std::invalid_argument("MdmSpec: length must be >= 1");
}

MdmStepper::MdmStepper(const MdmSpec& spec, StreamKey move_key, StreamKey env_key,
                       bool flip)
    : moves_(move_key), env_key_(env_key), p_(spec.p), sign_(flip ? -1.0 : 1.0) {}

std::int64_t MdmStepper::step() {
  const std::uint64_t raw = moves_.next_u64();
  if (to_unit(raw) < p_) {
    const double xi =
        (site_u64(env_key_, zigzag(y_), kSiteSaltA) & 1ull) ? 1.0 : -1.0;
    x_ += static_cast<std::int64_t>(sign_ * xi);
  } else {
    y_ += (raw & 1ull) ? 1 : -1;
  }
  return x_;
}

MdmTrial sample_mdm(const MdmSpec& spec, StreamKey move_key, StreamKey env_key) {
  spec.validate();
  MdmStepper stepper(spec, move_key, env_key);

  PathSample path;
  path.integer_valued = true;
  path.values.resize(static_cast<std::size_t>(spec.length) + 1);
  path.values[0] = 0.0;

  // |x| <= n, so a stamped bitmap counts distinct vertical lines exactly.
  std::vector<char> seen(static_cast<std::size_t>(2 * spec.length + 1), 0);
  seen[static_cast<std::size_t>(spec.length)] = 1;
  std::int64_t distinct = 1;

  for (std::int64_t k = 1; k <= spec.length; ++k) {
    const std::int64_t x = stepper.step();
    path.values[static_cast<std::size_t>(k)] = static_cast<double>(x);
    char& flag = seen[static_cast<std::size_t>(x + spec.length)];
    if (!flag) {
      flag = 1;
      ++distinct;
    }
  }

  MdmTrial trial;
  trial.first_coord_stats = path_stats(path);
  trial.t0_first = trial.first_coord_stats.first_return;
  trial.vertical_line_range = distinct;
  return trial;
}

FirstReturn mdm_survival(const MdmSpec& spec, StreamKey move_key, StreamKey env_key,
                         bool flip) {
  MdmStepper stepper(spec, move_key, env_key, flip);
  for (std::int64_t k = 1; k <= spec.length; ++k)
    if (stepper.step() == 0) return FirstReturn::at(k);
  return FirstReturn::censored();
}

MdmPairOutcome mdm_pair_events(const MdmSpec& spec, StreamKey move_key,
                               StreamKey env_key, double level) {
  MdmPairOutcome out;

  MdmStepper plain(spec, move_key, env_key, false);
  MdmStepper flipped(spec, move_key, env_key, true);
  bool plain_alive = true;
  std::int64_t plain_max = INT64_MIN;
  std::int64_t flipped_max = INT64_MIN;

  for (std::int64_t k = 1; k <= spec.length; ++k) {
    const std::int64_t a = plain.step();
    plain_max = std::max(plain_max, a);
    if (a == 0) plain_alive = false;

    const std::int64_t b = flipped.step();
    flipped_max = std::max(flipped_max, b);
  }

  // Orientation flip negates the x-path move by move, so survival is shared.
  out.survived = plain_alive;
  out.plain_max_le = static_cast<double>(plain_max) <= level;
  out.flipped_max_le = static_cast<double>(flipped_max) <= level;
  return out;
}

MdmConstants mdm_constants(double p, double sup_delta_mean) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("mdm_constants: p must lie in (0,1)");
  if (!(sup_delta_mean > 0.0))
    throw std::invalid_argument("mdm_constants: sup_delta_mean must be > 0");
  MdmConstants out;
  out.k_p = p * std::pow(1.0 - p, -0.25);
  out.kappa = 1.5 * out.k_p * sup_delta_mean;
  return out;
}

}  // namespace persim
