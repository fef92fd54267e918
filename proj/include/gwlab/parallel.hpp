#ifndef GWLAB_PARALLEL_HPP
#define GWLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace gwlab {

/// Worker count: GWLAB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_budget();

/// Runs body(i) for i in [0, n) on up to thread_budget() threads. Callers
/// write results into index-addressed slots, so output never depends on the
/// thread count. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gwlab

#endif  // GWLAB_PARALLEL_HPP
