#pragma once

#include <cstddef>
#include <functional>

namespace rrwoc {

/// Worker count for a request: 0 means hardware concurrency; result >= 1.
unsigned resolve_threads(unsigned requested);

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// body(worker, begin, end) on each. The first exception thrown by any
/// worker is rethrown after all workers joined.
void parallel_chunks(std::size_t count, unsigned threads,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& body);

}  // namespace rrwoc
