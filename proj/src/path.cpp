#include "persim/path.hpp"

#include <algorithm>
#include <cmath>

namespace persim {

void PathSample::validate() const {
  if (values.empty() || values.front() != 0.0)
    throw std::invalid_argument("PathSample: values must start at Z_0 = 0");
  if (integer_valued) {
    for (double v : values)
      if (v != std::floor(v))
        throw std::invalid_argument("PathSample: non-integer entry in integer path");
  }
}

PathStats path_stats(const PathSample& path) {
  const std::int64_t n = path.steps();
  if (n <= 0) throw std::invalid_argument("degenerate path");

  PathStats out;
  out.max_1n = path.values[1];
  out.min_1n = path.values[1];

  std::int64_t first_zero = 0;  // 0 = none seen yet
  std::vector<std::int64_t> floors;
  floors.reserve(path.values.size());
  floors.push_back(static_cast<std::int64_t>(std::floor(path.values[0])));

  for (std::int64_t k = 1; k <= n; ++k) {
    const double v = path.values[k];
    out.max_1n = std::max(out.max_1n, v);
    out.min_1n = std::min(out.min_1n, v);
    if (path.integer_valued && first_zero == 0 && v == 0.0) first_zero = k;
    floors.push_back(static_cast<std::int64_t>(std::floor(v)));
  }

  if (path.integer_valued) {
    out.first_return =
        first_zero ? FirstReturn::at(first_zero) : FirstReturn::censored();
    // Integer paths: the floor values are the values themselves.
    std::vector<std::int64_t> vals = floors;
    std::sort(vals.begin(), vals.end());
    out.range_count = std::unique(vals.begin(), vals.end()) - vals.begin();
  } else {
    out.first_return = FirstReturn::not_applicable();
  }

  std::sort(floors.begin(), floors.end());
  out.floor_range = std::unique(floors.begin(), floors.end()) - floors.begin();
  return out;
}

}  // namespace persim
