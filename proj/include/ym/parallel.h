#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace ym {

// Thread count: YMFLOW_THREADS env var, else hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs fn(begin, end) over fixed-size blocks of [0, n).  The block
// decomposition depends only on n, never on the thread count, so any
// reduction that combines per-block partials in block order is bitwise
// reproducible at every thread count.
void parallel_for_blocks(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)> &fn);

// Elementwise parallel loop, one call per index.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)> &fn);

// Deterministic sum reduction: per-block partials combined in block order.
double parallel_sum(std::int64_t n, const std::function<double(std::int64_t)> &term);

// Max reduction (order independent).
double parallel_max(std::int64_t n, const std::function<double(std::int64_t)> &term);

}  // namespace ym
