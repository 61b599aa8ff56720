#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace chebyprod {

/// Worker count: CHEBYPROD_THREADS when set (>= 1), else hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("CHEBYPROD_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(i) for i in [0, n) on a bounded worker pool. Results must be
/// written to pre-sized slots indexed by i so output order stays
/// deterministic regardless of thread count.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), n > 0 ? n : 1);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace chebyprod
