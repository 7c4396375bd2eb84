// Row-partitioned parallel loop. Each worker writes disjoint rows, so
// results are independent of the thread count. NIRFUSE_THREADS caps the
// worker count.

#ifndef NIRFUSE_PARALLEL_HPP
#define NIRFUSE_PARALLEL_HPP

#include <functional>

namespace nirfuse {

int worker_count();

/// Calls fn(y) for y in [0, height), partitioned contiguously over workers.
void parallel_rows(int height, const std::function<void(int)>& fn);

}  // namespace nirfuse

#endif
