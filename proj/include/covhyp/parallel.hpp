// Deterministic chunked parallel-for over an index range.
//
// Worker count comes from the COVHYP_THREADS environment variable: unset or
// "1" runs serially, "0" uses the hardware concurrency, any other positive
// integer caps the pool. Workers receive disjoint contiguous ranges and the
// caller writes each output slot exactly once, so results are bitwise
// independent of the thread count; reductions stay with the caller.
#pragma once

#include <functional>

namespace covhyp {

// Resolved worker count (>= 1). Throws InvalidParameter on a malformed
// COVHYP_THREADS value.
int worker_count();

// Invoke body(begin, end) over a partition of [0, n).
void parallel_for(long n, const std::function<void(long, long)>& body);

}  // namespace covhyp
