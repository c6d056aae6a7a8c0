#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace persim {

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Evaluate trials [0, trials) in fixed-size blocks pulled by a worker pool.
/// `eval` is called as eval(first, last) and must write only to per-trial
/// slots, so results are independent of scheduling and worker count.
/// Blocks are aligned to `align` (fGN trials come in pairs).
template <typename Fn>
void run_trial_blocks(std::int64_t trials, int workers, std::int64_t align,
                      Fn&& eval) {
  workers = resolve_workers(workers);
  std::int64_t block = std::max<std::int64_t>(1, trials / (workers * 16));
  block = ((block + align - 1) / align) * align;

  std::atomic<std::int64_t> next{0};
  auto drain = [&] {
    while (true) {
      const std::int64_t first = next.fetch_add(block);
      if (first >= trials) return;
      eval(first, std::min(first + block, trials));
    }
  };

  if (workers == 1 || trials <= block) {
    drain();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
  for (auto& t : pool) t.join();
}

}  // namespace persim
