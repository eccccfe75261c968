#include "uniscale/common.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace uniscale {

namespace {
std::atomic<int> g_threads{-1};

int read_env_threads() {
  const char* s = std::getenv("UNISCALE_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || v < 1) return 1;
  if (v > 64) v = 64;
  return static_cast<int>(v);
}
}  // namespace

int thread_count() {
  int t = g_threads.load(std::memory_order_relaxed);
  if (t > 0) return t;
  return read_env_threads();
}

void set_thread_count(int n) { g_threads.store(n, std::memory_order_relaxed); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t nt = static_cast<std::size_t>(thread_count());
  if (nt <= 1 || n < 2 * nt) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  for (std::size_t w = 0; w < nt; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace uniscale
