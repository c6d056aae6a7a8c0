#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "persim/fft.hpp"
#include "persim/rng.hpp"

using namespace persim;

namespace {

std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> sum = 0;
    for (std::size_t j = 0; j < n; ++j)
      sum += x[j] * std::polar(1.0, -2.0 * M_PI * double(j * k) / double(n));
    out[k] = sum;
  }
  return out;
}

}  // namespace

TEST_CASE("forward transform matches the naive DFT") {
  for (std::size_t n : {1u, 2u, 8u, 16u, 64u}) {
    Rng rng(derive_stream(3, n, 0));
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {rng.normal(), rng.normal()};
    const auto expected = naive_dft(x);

    FftPlan plan(n);
    std::vector<std::complex<double>> data = x, work(n);
    plan.forward(data.data(), work.data());
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(data[k] - expected[k]) < 1e-9);
  }
}

TEST_CASE("Parseval holds") {
  const std::size_t n = 128;
  Rng rng(derive_stream(4, 4, 4));
  std::vector<std::complex<double>> x(n);
  double time_energy = 0;
  for (auto& v : x) {
    v = {rng.normal(), rng.normal()};
    time_energy += std::norm(v);
  }
  FftPlan plan(n);
  std::vector<std::complex<double>> work(n);
  plan.forward(x.data(), work.data());
  double freq_energy = 0;
  for (const auto& v : x) freq_energy += std::norm(v);
  CHECK(freq_energy / double(n) == doctest::Approx(time_energy).epsilon(1e-12));
}

TEST_CASE("plan rejects non-power-of-two sizes") {
  CHECK_THROWS_AS(FftPlan(0), std::invalid_argument);
  CHECK_THROWS_AS(FftPlan(12), std::invalid_argument);
}
