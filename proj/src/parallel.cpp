#include "tfps/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace tfps {

int resolve_workers(int requested) {
  int w = std::max(1, requested);
  if (const char* env = std::getenv("TFPS_WORKERS")) {
    int cap = std::atoi(env);
    if (cap > 0) w = std::min(w, cap);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0) w = std::min<int>(w, static_cast<int>(hw));
  return w;
}

void parallel_for(int n, int workers, const std::function<void(int)>& f) {
  workers = std::min(std::max(1, workers), std::max(1, n));
  if (workers == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mtx;
  auto body = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mtx);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tfps
