#pragma once

#include <cstddef>
#include <functional>

namespace fracperiod {

/// Worker cap: FRACPERIOD_THREADS if set (0 or unset means hardware concurrency).
int max_threads();

/// Runs body(i) for i in [0, n). Work items must be independent; results keyed
/// by index stay deterministic regardless of the thread count. The first
/// exception thrown by any item is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace fracperiod
