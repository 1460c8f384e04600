#pragma once

#include <algorithm>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace emtomo {

/// Set the worker thread cap for all internally parallel kernels.
/// count <= 0 restores the hardware default.
void set_max_threads(int count);
int max_threads();

/// Invokes fn(i) for every i in [0, n). Each index is handled by exactly one
/// worker, so results do not depend on the thread count.
template <typename Fn>
void parallel_for(std::int64_t n, Fn&& fn);

namespace detail {
void run_parallel(std::int64_t n, void* ctx, void (*call)(void*, std::int64_t));
}

template <typename Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
  detail::run_parallel(n, &fn, [](void* ctx, std::int64_t i) {
    (*static_cast<std::remove_reference_t<Fn>*>(ctx))(i);
  });
}

// Summation uses fixed-size chunks accumulated in index order, so the result
// is bit-identical for any thread count.
inline constexpr std::int64_t kSumChunk = 8192;

template <typename Fn>
double parallel_sum(std::int64_t n, Fn&& term) {
  if (n <= 0) return 0.0;
  const std::int64_t chunks = (n + kSumChunk - 1) / kSumChunk;
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
  parallel_for(chunks, [&](std::int64_t c) {
    const std::int64_t begin = c * kSumChunk;
    const std::int64_t end = std::min(begin + kSumChunk, n);
    double s = 0.0;
    for (std::int64_t i = begin; i < end; ++i) s += term(i);
    partial[static_cast<std::size_t>(c)] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace emtomo
