#include "uwmvs/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace uwmvs {

namespace {
std::atomic<int> g_num_threads{1};
}

void set_num_threads(int n) { g_num_threads.store(std::max(1, n)); }

int num_threads() { return g_num_threads.load(); }

void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& f) {
  if (n <= 0) return;
  const int workers = std::min<int64_t>(g_num_threads.load(), n);
  if (workers <= 1) {
    f(0, n);
    return;
  }
  const int64_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) {
    const int64_t begin = t * chunk;
    const int64_t end = std::min<int64_t>(begin + chunk, n);
    if (begin >= end) break;
    pool.emplace_back(f, begin, end);
  }
  f(0, std::min<int64_t>(chunk, n));
  for (auto& th : pool) th.join();
}

}  // namespace uwmvs
