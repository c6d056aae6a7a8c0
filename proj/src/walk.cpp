#include "persim/walk.hpp"

#include <cmath>
#include <stdexcept>

#include "persim/site_map.hpp"

namespace persim {

void WalkSpec::validate() const {
  if (dimension < 1 || dimension > 3)
    throw std::invalid_argument("WalkSpec: dimension must be 1, 2 or 3");
  if (length < 1) throw std::invalid_argument("WalkSpec: length must be >= 1");
  switch (kind) {
    case WalkKind::simple:
      break;
    case WalkKind::lazy:
      if (!(hold >= 0.0) || !(hold < 1.0))
        throw std::invalid_argument("WalkSpec: hold must lie in [0,1)");
      break;
    case WalkKind::stable:
      if (dimension != 1)
        throw std::invalid_argument("WalkSpec: stable walks are d = 1 only");
      if (!(alpha > 1.0) || !(alpha < 2.0))
        throw std::invalid_argument("WalkSpec: stable index must lie in (1,2)");
      break;
  }
}

double sample_stable_step(double alpha, Rng& rng) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw std::invalid_argument("sample_stable_step: alpha must lie in (1,2]");
  const double u = 3.14159265358979323846 * (rng.uniform() - 0.5);  // (-pi/2, pi/2)
  const double w = rng.exponential();
  const double cu = std::cos(u);
  return std::sin(alpha * u) / std::pow(cu, 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
}

WalkStepper::WalkStepper(const WalkSpec& spec, StreamKey key)
    : rng_(key), dim_(spec.dimension), kind_(spec.kind), hold_(spec.hold),
      alpha_(spec.alpha) {}

void WalkStepper::step() {
  switch (kind_) {
    case WalkKind::simple: {
      if (dim_ == 1) {
        pos_[0] += rng_.pm1();
      } else {
        const std::uint32_t m = rng_.below(static_cast<std::uint32_t>(2 * dim_));
        pos_[m >> 1] += (m & 1) ? 1 : -1;
      }
      break;
    }
    case WalkKind::lazy: {
      if (rng_.uniform() < hold_) break;
      if (dim_ == 1) {
        pos_[0] += rng_.pm1();
      } else {
        const std::uint32_t m = rng_.below(static_cast<std::uint32_t>(2 * dim_));
        pos_[m >> 1] += (m & 1) ? 1 : -1;
      }
      break;
    }
    case WalkKind::stable:
      pos_[0] += std::llround(sample_stable_step(alpha_, rng_));
      break;
  }
}

LatticePath sample_walk(const WalkSpec& spec, StreamKey key) {
  spec.validate();
  LatticePath path;
  path.dimension = spec.dimension;
  path.steps = spec.length;
  path.coords.assign(static_cast<std::size_t>(spec.length + 1) * spec.dimension, 0);
  WalkStepper stepper(spec, key);
  for (std::int64_t k = 1; k <= spec.length; ++k) {
    stepper.step();
    for (int i = 0; i < spec.dimension; ++i)
      path.coords[static_cast<std::size_t>(k) * spec.dimension + i] = stepper.position()[i];
  }
  return path;
}

OccupationStats occupation_stats(const LatticePath& path, double beta) {
  SiteTable table(static_cast<std::size_t>(path.steps) + 1);
  for (std::int64_t k = 1; k <= path.steps; ++k)
    ++table.touch(pack_site(path.at(k), path.dimension)).count;

  OccupationStats out;
  out.walk_range = static_cast<std::int64_t>(table.size());
  table.for_each([&](const SiteTable::Slot& s) {
    out.self_intersections += s.count * s.count;
    out.v_beta += std::pow(static_cast<double>(s.count), beta);
  });
  return out;
}

}  // namespace persim
