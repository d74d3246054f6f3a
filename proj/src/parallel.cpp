#include "ym/parallel.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace ym {

namespace {

int g_threads = 0;

int detect_threads() {
  if (const char *env = std::getenv("YMFLOW_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

constexpr std::int64_t kBlock = 4096;  // fixed: reduction order never changes

}  // namespace

int thread_count() {
  if (g_threads == 0) g_threads = detect_threads();
  return g_threads;
}

// n <= 0 resets to auto-detection
void set_thread_count(int n) { g_threads = std::max(0, n); }

void parallel_for_blocks(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)> &fn) {
  if (n <= 0) return;
  std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  int nt = std::min<std::int64_t>(thread_count(), nblocks);
  if (nt <= 1) {
    for (std::int64_t b = 0; b < nblocks; ++b)
      fn(b * kBlock, std::min(n, (b + 1) * kBlock));
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::int64_t b = next.fetch_add(1);
      if (b >= nblocks) break;
      fn(b * kBlock, std::min(n, (b + 1) * kBlock));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)> &fn) {
  parallel_for_blocks(n, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) fn(i);
  });
}

double parallel_sum(std::int64_t n, const std::function<double(std::int64_t)> &term) {
  if (n <= 0) return 0.0;
  std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
  parallel_for_blocks(n, [&](std::int64_t lo, std::int64_t hi) {
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    partial[lo / kBlock] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double parallel_max(std::int64_t n, const std::function<double(std::int64_t)> &term) {
  if (n <= 0) return 0.0;
  std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, -1e300);
  parallel_for_blocks(n, [&](std::int64_t lo, std::int64_t hi) {
    double m = -1e300;
    for (std::int64_t i = lo; i < hi; ++i) m = std::max(m, term(i));
    partial[lo / kBlock] = m;
  });
  double best = -1e300;
  for (double p : partial) best = std::max(best, p);
  return best;
}

}  // namespace ym
