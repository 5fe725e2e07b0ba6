#include "scc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace scc {

int thread_count()
{
  int n = 0;
  if (char const *env = std::getenv("SCC_THREADS")) {
    n = std::atoi(env);
  }
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::max(n, 1);
}

void parallel_for(Index n, std::function<void(Index)> const &fn)
{
  int const workers = static_cast<int>(std::min<Index>(thread_count(), n));
  if (workers <= 1) {
    for (Index i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }

  std::atomic<Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (Index i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  for (int t = 1; t < workers; ++t) {
    pool.emplace_back(work);
  }
  work();
  pool.clear();
  if (failure) {
    std::rethrow_exception(failure);
  }
}

} // namespace scc
