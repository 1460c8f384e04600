#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "emtomo/dose.hpp"
#include "emtomo/rng.hpp"

using namespace emtomo;

TEST_CASE("poisson sampler moments match the distribution") {
  for (double mean : {0.5, 4.0, 35.0, 1e4}) {
    SplitMix64 gen(981);
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(poisson_draw(gen, mean));
      sum += k;
      sum_sq += k * k;
    }
    const double sample_mean = sum / n;
    const double sample_var = sum_sq / n - sample_mean * sample_mean;
    // 3-sigma bounds on the estimators: Var(mean) = mu/n,
    // Var(s^2) ~ (mu + 2*mu^2)/n for Poisson.
    CHECK(std::abs(sample_mean - mean) <= 3.0 * std::sqrt(mean / n));
    CHECK(std::abs(sample_var - mean) <=
          3.0 * std::sqrt((mean + 2.0 * mean * mean) / n));
  }
  SplitMix64 gen(1);
  CHECK(poisson_draw(gen, 0.0) == 0);
  CHECK_THROWS(poisson_draw(gen, -1.0));
}

TEST_CASE("flat zero sinogram keeps its mean through the noise model") {
  const double i0 = 1e5;
  Sinogram clean(100, 1000);  // 1e5 entries, all zero line integrals
  const DoseModel model{i0, 77, 1};
  const auto noisy = simulate_low_dose(clean, model);

  double mean_p = 0.0;
  double mean_counts = 0.0;
  for (double v : noisy.values()) {
    mean_p += v;
    mean_counts += i0 * std::exp(-v);
  }
  mean_p /= static_cast<double>(noisy.size());
  mean_counts /= static_cast<double>(noisy.size());

  // Per-entry sigma of p_n is ~1/sqrt(I0); the clamp at zero biases the mean
  // upward by well under that.
  CHECK(std::abs(mean_p) <= 3.0 / std::sqrt(i0));
  CHECK(std::abs(mean_counts - i0) <= 0.01 * i0);
  CHECK(noisy.all_nonnegative());
  CHECK(noisy.all_finite());
}

TEST_CASE("noise shrinks as the dose grows") {
  Sinogram clean(40, 250, 1.0);  // constant unit line integral
  const auto low = simulate_low_dose(clean, DoseModel{1e5, 3, 1});
  const auto high = simulate_low_dose(clean, DoseModel{1e9, 3, 1});

  double max_low = 0.0;
  double max_high = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    max_low = std::max(max_low, std::abs(low[i] - 1.0));
    max_high = std::max(max_high, std::abs(high[i] - 1.0));
  }
  // Deviations scale like 1/sqrt(I0): four orders of dose, two of amplitude.
  CHECK(max_high < max_low / 10.0);
  CHECK(max_high < 1e-3);
}

TEST_CASE("low-dose simulation is deterministic and order independent") {
  Sinogram clean(30, 64);
  SplitMix64 gen(5);
  for (auto& v : clean.values()) v = 2.0 * gen.next_double();
  const DoseModel model{5e3, 11, 1};
  const auto a = simulate_low_dose(clean, model);
  const auto b = simulate_low_dose(clean, model);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

  const auto c = simulate_low_dose(clean, DoseModel{5e3, 12, 1});
  bool different = false;
  for (std::size_t i = 0; i < a.size() && !different; ++i) different = a[i] != c[i];
  CHECK(different);
}

TEST_CASE("noisy values are bounded by the zero-count floor") {
  Sinogram clean(4, 16, 30.0);  // opaque: detected counts hit the floor
  const double i0 = 1e3;
  const auto noisy = simulate_low_dose(clean, DoseModel{i0, 2, 1});
  for (double v : noisy.values()) {
    CHECK(v <= std::log(i0) + 1e-12);
    CHECK(v >= 0.0);
  }
}

TEST_CASE("dose model rejects invalid inputs") {
  Sinogram clean(4, 4, 1.0);
  CHECK_THROWS_AS(simulate_low_dose(clean, DoseModel{0.0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(simulate_low_dose(clean, DoseModel{-5.0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(simulate_low_dose(clean, DoseModel{1e4, 1, 0}), std::invalid_argument);
  Sinogram negative(4, 4, -1.0);
  CHECK_THROWS_AS(simulate_low_dose(negative, DoseModel{1e4, 1, 1}), std::invalid_argument);
}
