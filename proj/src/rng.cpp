#include "emtomo/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace emtomo {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
  if (bound == 0) return 0;
  // Rejection from the top keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (index + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void seeded_shuffle(std::span<int> values, std::uint64_t seed) {
  SplitMix64 gen(mix_seed(seed, 0x5348554646ULL));
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(gen.next_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

namespace {

// ln(k!) via a small exact table and a Stirling tail.
double log_factorial(double k) {
  static const double table[] = {
      0.0,
      0.0,
      0.6931471805599453,
      1.791759469228055,
      3.1780538303479458,
      4.787491742782046,
      6.579251212010101,
      8.525161361065415,
      10.60460290274525,
      12.801827480081469,
      15.104412573075516,
      17.502307845873887,
      19.987214495661885,
      22.552163853123425,
      25.19122118273868,
      27.89927138384089,
      30.671860106080672,
      33.50507345013689,
      36.39544520803305,
      39.339884187199495,
      42.335616460753485,
  };
  if (k < 21.0) return table[static_cast<int>(k)];
  const double inv = 1.0 / k;
  const double inv2 = inv * inv;
  return (k + 0.5) * std::log(k) - k + 0.9189385332046727  // ln(sqrt(2*pi))
         + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

std::int64_t poisson_small(SplitMix64& gen, double mean) {
  // Knuth's product-of-uniforms inversion.
  const double limit = std::exp(-mean);
  std::int64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= gen.next_double_open();
  } while (p > limit);
  return k - 1;
}

std::int64_t poisson_ptrs(SplitMix64& gen, double mean) {
  // Hormann, "The transformed rejection method for generating Poisson
  // random variables" (PTRS), valid for mean >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = gen.next_double() - 0.5;
    double v = gen.next_double_open();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - log_factorial(k)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

}  // namespace

std::int64_t poisson_draw(SplitMix64& gen, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson_draw: mean must be finite and nonnegative");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_small(gen, mean);
  return poisson_ptrs(gen, mean);
}

}  // namespace emtomo
