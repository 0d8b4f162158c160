#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace h2r1 {

/// Worker count: explicit request > THREADS env > hardware concurrency.
inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Run body(i) for i in [0, n) on a pool of worker threads.  Workers own
/// contiguous index blocks; callers that write results by index therefore
/// get output independent of the thread count.  The lowest-index exception
/// wins and is rethrown.
inline void parallel_for(int n, int threads,
                         const std::function<void(int)>& body) {
  if (n <= 0) return;
  const int workers = std::min(resolve_thread_count(threads), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<int> error_index(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int block = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * block;
    const int hi = std::min(n, lo + block);
    pool.emplace_back([&, w, lo, hi] {
      for (int i = lo; i < hi; ++i) {
        try {
          body(i);
        } catch (...) {
          errors[w] = std::current_exception();
          error_index[w] = i;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  int first = -1;
  for (int w = 0; w < workers; ++w)
    if (errors[w] && (first < 0 || error_index[w] < error_index[first]))
      first = w;
  if (first >= 0) std::rethrow_exception(errors[first]);
}

}  // namespace h2r1
