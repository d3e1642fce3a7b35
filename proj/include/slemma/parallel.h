#pragma once

#include <cstddef>
#include <functional>

namespace slemma {

/// Worker count from SLEMMA_THREADS (unset or 0 means hardware concurrency).
int ThreadCount();

/// Calls fn(i) for i in [0, n) over contiguous chunks on up to ThreadCount()
/// threads. fn must only write to slots owned by i.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace slemma
