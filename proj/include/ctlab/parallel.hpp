#pragma once

#include <cstddef>
#include <functional>

namespace ctlab {

/// Worker count: CTLAB_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n), split into contiguous blocks across workers.
/// Callers write results into per-index slots and reduce afterwards in index
/// order, so the output never depends on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ctlab
