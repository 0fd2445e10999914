#include "geomed/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace geomed {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GEOMED_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(Index n, const std::function<void(Index)>& fn, int threads) {
  if (n <= 0) return;
  const int nthreads = std::min<Index>(resolve_threads(threads), n);

  Index first_error = n;
  std::exception_ptr error;
  std::mutex error_mutex;

  auto guarded = [&](Index i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (i < first_error) {
        first_error = i;
        error = std::current_exception();
      }
    }
  };

  if (nthreads == 1) {
    for (Index i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<Index> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const Index i = next.fetch_add(1);
          if (i >= n) return;
          guarded(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  if (error) std::rethrow_exception(error);
}

}  // namespace geomed
