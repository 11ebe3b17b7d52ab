#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace mdsfeat {

/// Static partition of [0, n) across worker threads. `chunk(begin, end)` must
/// only write state owned by its own range, so results are identical for any
/// thread count. Exceptions from workers are rethrown on the caller.
inline void parallel_for_chunks(std::size_t n,
                                const std::function<void(std::size_t, std::size_t)>& chunk,
                                unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t min_per_thread = 256;
  if (threads <= 1 || n <= min_per_thread) {
    if (n > 0) chunk(0, n);
    return;
  }
  const auto workers = static_cast<std::size_t>(threads);
  const std::size_t stride = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * stride;
    const std::size_t end = std::min(n, begin + stride);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        chunk(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace mdsfeat
