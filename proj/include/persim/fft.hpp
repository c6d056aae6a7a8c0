#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace persim {

/// Stockham autosort FFT for power-of-two sizes: unit-stride passes, no bit
/// reversal, one ping-pong work buffer. The plan is immutable after
/// construction and safe to share across threads; each thread owns its
/// data/work buffers.
class FftPlan {
 public:
  explicit FftPlan(std::size_t size);

  std::size_t size() const { return size_; }

  /// Unnormalized forward transform X_k = sum_j x_j e^{-2*pi*i*jk/N},
  /// in place in `data`; `work` must hold size() entries.
  void forward(std::complex<double>* data, std::complex<double>* work) const;

 private:
  std::size_t size_;
  std::size_t stages_;
  std::vector<std::vector<std::complex<double>>> twiddle_;  // per stage
};

}  // namespace persim
