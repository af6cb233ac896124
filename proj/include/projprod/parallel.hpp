#pragma once

#include <cstddef>
#include <functional>

namespace projprod {

// Worker cap for slice-parallel loops: min(hardware_concurrency, PROJPROD_THREADS).
// PROJPROD_THREADS unset or invalid means "no extra cap"; values < 1 clamp to 1.
int max_threads();

// Run fn(i) for i in [0, n). Iterations must be independent; they are split
// into contiguous chunks across at most max_threads() workers. The first
// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& fn);

}  // namespace projprod
