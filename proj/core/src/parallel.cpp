#include "dioph/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace dioph {

unsigned worker_count() {
  if (const char* env = std::getenv("DIOPH_LAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for_chunks(std::size_t chunks,
                         const std::function<void(std::size_t)>& body) {
  if (chunks == 0) return;
  const std::size_t threads =
      std::min<std::size_t>(worker_count(), chunks);
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        body(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<long long> block_bounds(long long begin, long long end,
                                    long long block_size) {
  std::vector<long long> bounds{begin};
  if (block_size <= 0) block_size = 1;
  for (long long lo = begin; lo < end;) {
    lo = std::min(end, lo + block_size);
    bounds.push_back(lo);
  }
  if (bounds.size() == 1) bounds.push_back(end);
  return bounds;
}

}  // namespace dioph
