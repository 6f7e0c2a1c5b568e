#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace sac {

// Process-wide worker cap, settable from the CLI (--threads).
inline int& max_threads() {
  static int n = static_cast<int>(std::thread::hardware_concurrency());
  return n;
}

// Static block partition; fn(begin, end) runs on [begin,end).
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  int workers = std::max(1, std::min<int>(max_threads(), static_cast<int>(n)));
  if (workers <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t b = w * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, b, e);
  }
  for (auto& t : pool) t.join();
}

}  // namespace sac
