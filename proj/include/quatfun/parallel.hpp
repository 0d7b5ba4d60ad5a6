#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace quatfun {

/// Worker count: hardware concurrency, capped by QR_THREADS when set.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("QR_THREADS")) {
    char *end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1)
      n = std::min<unsigned>(n, unsigned(cap));
  }
  return n;
}

/// out[i] = fn(i) for i < n, computed on up to thread_count() threads.
/// Callers reduce `out` sequentially, so results do not depend on the
/// thread count.
template <typename T, typename F> std::vector<T> parallel_map(std::size_t n, F &&fn) {
  std::vector<T> out(n);
  const unsigned workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers)
          out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : pool)
    t.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return out;
}

} // namespace quatfun
