#pragma once

#include <cstdint>
#include <functional>

namespace uwmvs {

// Global worker count used by the data-parallel kernels. 1 disables threading.
void set_num_threads(int n);
int num_threads();

// Runs f(begin, end) over a partition of [0, n) into contiguous chunks, one
// chunk per worker. Every output element is produced by exactly one worker
// with a sequential inner loop, so results are bit-identical for any thread
// count.
void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& f);

}  // namespace uwmvs
