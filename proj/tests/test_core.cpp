#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "persim/path.hpp"
#include "persim/rng.hpp"

using namespace persim;

namespace {

PathSample int_path(std::vector<double> values) {
  PathSample p;
  p.values = std::move(values);
  p.integer_valued = true;
  return p;
}

}  // namespace

TEST_CASE("path_stats reads off the documented examples") {
  {
    const PathStats s = path_stats(int_path({0, -1, -2}));
    CHECK(s.max_1n == -1);
    CHECK(s.min_1n == -2);
    CHECK(s.first_return.is_censored());
    CHECK(*s.range_count == 3);  // {0,-1,-2}; Z_0 counts
  }
  {
    const PathStats s = path_stats(int_path({0, 1, 0}));
    CHECK(s.first_return.returned());
    CHECK(s.first_return.step() == 2);
    CHECK(*s.range_count == 2);
  }
  {
    const PathStats s = path_stats(int_path({0, -1, 0, 1}));
    CHECK(*s.range_count == 3);
    CHECK(s.max_1n - s.min_1n + 1 == 3);  // hull includes 0 here
  }
}

TEST_CASE("degenerate path is an error") {
  CHECK_THROWS_WITH_AS(path_stats(int_path({0})), "degenerate path",
                       std::invalid_argument);
}

TEST_CASE("persistence_event compares the running max to the level") {
  PathStats s;
  s.max_1n = -1;
  CHECK(persistence_event(s, -1.0));
  s.max_1n = 0;
  CHECK_FALSE(persistence_event(s, -1.0));
}

// All 27 three-step paths with increments in {-1,0,1}: the range equals the
// width of the integer hull spanned by Z_0..Z_n.
TEST_CASE("range identity by exhaustive enumeration of {-1,0,1} paths") {
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        const PathSample p =
            int_path({0, double(a), double(a + b), double(a + b + c)});
        const PathStats s = path_stats(p);
        const double max0 = std::max(0.0, s.max_1n);
        const double min0 = std::min(0.0, s.min_1n);
        CHECK(*s.range_count == static_cast<std::int64_t>(max0 - min0 + 1));
      }
}

TEST_CASE("event {max <= -1} equals {censored and Z_1 <= -1} path by path") {
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        const PathSample p =
            int_path({0, double(a), double(a + b), double(a + b + c)});
        const PathStats s = path_stats(p);
        const bool event = s.max_1n <= -1;
        const bool no_jump = s.first_return.is_censored() && p.values[1] <= -1;
        CHECK(event == no_jump);
      }
}

TEST_CASE("simple walk, n = 2: the persistence event hits 1 of 4 paths") {
  int hits = 0;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      const PathStats s = path_stats(int_path({0, double(a), double(a + b)}));
      hits += persistence_event(s, -1.0);
    }
  CHECK(hits == 1);  // probability 1/4
}

TEST_CASE("first_return is monotone under truncation") {
  Rng rng(derive_stream(2024, 0, 17));
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<double> values{0};
    for (int k = 0; k < 20; ++k)
      values.push_back(values.back() + static_cast<double>(rng.below(3)) - 1.0);
    const PathSample full = int_path(values);
    const PathStats fs = path_stats(full);
    for (std::size_t m = 1; m + 1 < values.size(); ++m) {
      PathSample prefix = int_path(
          std::vector<double>(values.begin(), values.begin() + m + 1));
      const PathStats ps = path_stats(prefix);
      if (ps.first_return.returned()) {
        REQUIRE(fs.first_return.returned());
        CHECK(fs.first_return.step() == ps.first_return.step());
      } else if (fs.first_return.returned()) {
        // Censored prefix: any later return happens after the prefix horizon.
        CHECK(fs.first_return.step() > static_cast<std::int64_t>(m));
      }
    }
  }
}

TEST_CASE("floor_range counts one cell per integer floor") {
  PathSample p;
  p.values = {0, -0.5, -1.0, -1.5};
  p.integer_valued = false;
  const PathStats s = path_stats(p);
  // floors: 0, -1, -1, -2
  CHECK(s.floor_range == 3);
  CHECK_FALSE(s.range_count.has_value());
  CHECK_FALSE(s.first_return.applicable());
  CHECK_THROWS_AS(s.first_return.step(), std::logic_error);
}

TEST_CASE("PathSample validation") {
  PathSample p;
  p.values = {1.0, 2.0};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.values = {0.0, 0.5};
  p.integer_valued = true;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.integer_valued = false;
  CHECK_NOTHROW(p.validate());
}
