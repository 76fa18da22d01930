#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace wellposed {

// Worker count from WELLPOSED_THREADS (0 or unset = hardware concurrency).
unsigned worker_count();

// Calls body(begin, end, worker) on contiguous chunks of [0, n). Chunk
// boundaries depend only on n and the worker count.
template <typename Body>
void parallel_chunks(std::size_t n, Body&& body, unsigned workers = 0) {
  if (workers == 0) workers = worker_count();
  workers = static_cast<unsigned>(
      std::max<std::size_t>(1, std::min<std::size_t>(workers, n)));
  if (workers <= 1) {
    body(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = std::min(n, w * chunk);
    std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
}

}  // namespace wellposed
