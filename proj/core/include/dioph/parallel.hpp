#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dioph {

// Number of worker threads: DIOPH_LAB_THREADS when set to a positive
// integer, otherwise std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

// Runs body(chunk) for chunk in [0, chunks). Chunks are claimed dynamically
// by up to worker_count() threads; callers store per-chunk results and
// reduce them in chunk order, so the outcome never depends on the thread
// count. The first exception thrown by any chunk is rethrown.
void parallel_for_chunks(std::size_t chunks,
                         const std::function<void(std::size_t)>& body);

// Splits [begin, end) into contiguous blocks of at most block_size and
// returns the block boundaries (front() == begin, back() == end).
std::vector<long long> block_bounds(long long begin, long long end,
                                    long long block_size);

}  // namespace dioph
