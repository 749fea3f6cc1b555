#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pudg {

// Runs f(0..n-1) on up to `jobs` threads. f must only write to its own slot.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  {
    std::vector<std::jthread> pool;
    unsigned t = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    for (unsigned k = 0; k < t; ++k)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next++;
          if (i >= n) return;
          try {
            f(i);
          } catch (...) {
            std::lock_guard lock(err_mu);
            if (!err) err = std::current_exception();
            next = n;
            return;
          }
        }
      });
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace pudg
