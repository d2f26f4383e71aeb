#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace gis {

/// Worker count: $GIS_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
inline unsigned default_threads() {
  if (const char* env = std::getenv("GIS_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0)
        return unsigned(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(begin, end) over contiguous chunks of [0, count). Chunk results must
/// be written to disjoint locations; the first exception thrown by any chunk
/// is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0)
    threads = default_threads();
  const std::size_t min_chunk = 256;
  std::size_t workers = std::min<std::size_t>(threads, (count + min_chunk - 1) / min_chunk);
  if (workers <= 1) {
    if (count)
      fn(std::size_t(0), count);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t step = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * step, e = std::min(count, b + step);
      if (b >= e)
        break;
      pool.emplace_back([&, b, e] {
        try {
          fn(b, e);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure)
            failure = std::current_exception();
        }
      });
    }
  }
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace gis
