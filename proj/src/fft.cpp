#include "persim/fft.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace persim {

FftPlan::FftPlan(std::size_t size) : size_(size), stages_(0) {
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("FftPlan: size must be a power of two");
  while ((std::size_t{1} << stages_) < size) ++stages_;

  twiddle_.resize(stages_);
  for (std::size_t t = 0; t < stages_; ++t) {
    const std::size_t n = size >> t;
    const std::size_t m = n / 2;
    const double ang = -6.283185307179586476925286766559 / static_cast<double>(n);
    twiddle_[t].resize(m);
    for (std::size_t p = 0; p < m; ++p)
      twiddle_[t][p] = std::polar(1.0, ang * static_cast<double>(p));
  }
}

void FftPlan::forward(std::complex<double>* data,
                      std::complex<double>* work) const {
  if (size_ == 1) return;
  std::complex<double>* src = data;
  std::complex<double>* dst = work;

  // Stage t: n = N >> t sub-transform length, s = 1 << t interleaved columns.
  for (std::size_t t = 0; t < stages_; ++t) {
    const std::size_t s = std::size_t{1} << t;
    const std::size_t m = size_ >> (t + 1);
    const std::complex<double>* tw = twiddle_[t].data();
    for (std::size_t p = 0; p < m; ++p) {
      const double wr = tw[p].real();
      const double wi = tw[p].imag();
      const std::complex<double>* xa = src + s * p;
      const std::complex<double>* xb = src + s * (p + m);
      std::complex<double>* ya = dst + s * 2 * p;
      std::complex<double>* yb = ya + s;
      for (std::size_t q = 0; q < s; ++q) {
        const double ar = xa[q].real(), ai = xa[q].imag();
        const double br = xb[q].real(), bi = xb[q].imag();
        ya[q] = {ar + br, ai + bi};
        const double dr = ar - br, di = ai - bi;
        yb[q] = {dr * wr - di * wi, dr * wi + di * wr};
      }
    }
    std::swap(src, dst);
  }
  if (src != data)
    std::memcpy(data, src, size_ * sizeof(std::complex<double>));
}

}  // namespace persim
