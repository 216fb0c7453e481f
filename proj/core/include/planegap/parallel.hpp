#pragma once

#include <cstddef>
#include <functional>

namespace planegap {

// Worker count: FLOWCUT_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int ThreadCount();

// Runs body(i) for i in [0, count) on up to ThreadCount() threads. Callers
// write results into per-index slots so the outcome does not depend on
// scheduling. The first exception thrown by any body is rethrown.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace planegap
