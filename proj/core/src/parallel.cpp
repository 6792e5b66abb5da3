#include "rrwoc/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rrwoc {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::size_t count, unsigned threads,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    body(0, 0, count);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t base = count / workers;
  const std::size_t extra = count % workers;
  std::size_t begin = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t end = begin + base + (w < extra ? 1 : 0);
    pool.emplace_back([&, w, begin, end] {
      try {
        body(static_cast<unsigned>(w), begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rrwoc
