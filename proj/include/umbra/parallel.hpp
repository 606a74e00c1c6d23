#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace umbra {

// 0 or negative -> hardware concurrency.
inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(worker, begin, end) over contiguous chunks of [0, n). With one
// worker everything runs on the calling thread; results that partition the
// output are identical for any worker count. Accumulating callers keep one
// buffer per worker and merge them in worker order.
inline void parallel_for_chunks(
    std::size_t n, int workers,
    const std::function<void(int, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t w =
      std::min<std::size_t>(std::max(workers, 1), n);
  if (w == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w - 1);
  const std::size_t chunk = (n + w - 1) / w;
  for (std::size_t i = 1; i < w; ++i) {
    const std::size_t begin = i * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, static_cast<int>(i), begin, end);
  }
  fn(0, 0, std::min(n, chunk));
  for (std::thread& t : pool) t.join();
}

}  // namespace umbra
