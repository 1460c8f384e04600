#include "emtomo/parallel.hpp"

#include <atomic>
#include <thread>

namespace emtomo {

namespace {
std::atomic<int> g_max_threads{0};  // 0 = hardware default

int hardware_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}
}  // namespace

void set_max_threads(int count) { g_max_threads.store(count > 0 ? count : 0); }

int max_threads() {
  const int n = g_max_threads.load();
  return n > 0 ? n : hardware_threads();
}

namespace detail {

void run_parallel(std::int64_t n, void* ctx, void (*call)(void*, std::int64_t)) {
  if (n <= 0) return;
  const int threads = std::min<std::int64_t>(max_threads(), n);
  if (threads <= 1) {
    for (std::int64_t i = 0; i < n; ++i) call(ctx, i);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) call(ctx, i);
}

}  // namespace detail
}  // namespace emtomo
