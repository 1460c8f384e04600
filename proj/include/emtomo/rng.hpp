#pragma once

#include <cstdint>
#include <span>

namespace emtomo {

/// Small counter-style generator. A stream is cheap to construct from a key,
/// which lets per-entry randomness stay independent of evaluation order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1); never returns 0 (safe under log).
  double next_double_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Mixes a base seed with a stream index into an independent stream key.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic Fisher-Yates shuffle.
void seeded_shuffle(std::span<int> values, std::uint64_t seed);

/// Exact Poisson draw; inversion for small means, transformed rejection
/// (Hormann's PTRS) for large ones. Deterministic per generator state.
std::int64_t poisson_draw(SplitMix64& gen, double mean);

}  // namespace emtomo
