#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace knotscope {

/// Thread count from KNOTSCOPE_THREADS, else hardware concurrency (min 1).
unsigned default_threads();

/// Runs body(begin, end) over contiguous chunks of [0, n) on up to `threads`
/// threads. Chunk boundaries depend only on n and the thread count, and
/// callers write results into per-index slots, so output never depends on
/// scheduling. If chunks throw, the exception of the lowest chunk is
/// rethrown, which is the error at the lowest failing index.
template <class Body>
void parallel_for_chunks(std::size_t n, unsigned threads, Body&& body) {
  if (n == 0) return;
  std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
  if (workers == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = n * w / workers;
    std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  parallel_for_chunks(n, threads, [&body](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

}  // namespace knotscope
