#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace lktube {

// Index-based parallel for over [0, n). Results keyed by index stay
// deterministic for any thread count. Rethrows the first worker exception.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto nthreads = static_cast<std::size_t>(threads);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nthreads);
  for (std::size_t tid = 0; tid < nthreads; ++tid) {
    pool.emplace_back([&, tid]() {
      try {
        for (std::size_t i = tid; i < n; i += nthreads) body(i);
      } catch (...) {
        errors[tid] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace lktube
