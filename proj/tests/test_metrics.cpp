#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "emtomo/metrics.hpp"
#include "emtomo/rng.hpp"

using namespace emtomo;

namespace {

ImageGrid random_image(int n, std::uint64_t seed) {
  ImageGrid image(n, n);
  SplitMix64 gen(seed);
  for (auto& v : image.values()) v = gen.next_double();
  return image;
}

// Direct windowed SSIM with its own Gaussian weights; no shared code with the
// library path.
double ssim_oracle(const ImageGrid& x, const ImageGrid& y, double range) {
  const int win = 11;
  const int rad = win / 2;
  const double sigma = 1.5;
  std::vector<double> weight(static_cast<std::size_t>(win) * win);
  double wsum = 0.0;
  for (int dy = -rad; dy <= rad; ++dy) {
    for (int dx = -rad; dx <= rad; ++dx) {
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      weight[static_cast<std::size_t>(dy + rad) * win + static_cast<std::size_t>(dx + rad)] = v;
      wsum += v;
    }
  }
  for (double& v : weight) v /= wsum;

  const double c1 = (0.01 * range) * (0.01 * range);
  const double c2 = (0.03 * range) * (0.03 * range);
  const int n = x.width();
  double total = 0.0;
  int count = 0;
  for (int r = rad; r < n - rad; ++r) {
    for (int c = rad; c < n - rad; ++c) {
      double mx = 0.0, my = 0.0;
      for (int dy = -rad; dy <= rad; ++dy) {
        for (int dx = -rad; dx <= rad; ++dx) {
          const double w = weight[static_cast<std::size_t>(dy + rad) * win +
                                  static_cast<std::size_t>(dx + rad)];
          mx += w * x.at(r + dy, c + dx);
          my += w * y.at(r + dy, c + dx);
        }
      }
      double vx = 0.0, vy = 0.0, cov = 0.0;
      for (int dy = -rad; dy <= rad; ++dy) {
        for (int dx = -rad; dx <= rad; ++dx) {
          const double w = weight[static_cast<std::size_t>(dy + rad) * win +
                                  static_cast<std::size_t>(dx + rad)];
          const double ex = x.at(r + dy, c + dx) - mx;
          const double ey = y.at(r + dy, c + dx) - my;
          vx += w * ex * ex;
          vy += w * ey * ey;
          cov += w * ex * ey;
        }
      }
      total += ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
               ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  }
  return total / count;
}

}  // namespace

TEST_CASE("psnr basics") {
  const auto image = random_image(32, 3);
  CHECK(psnr(image, image, 1.0) == kPsnrCap);

  const ImageGrid zeros(32, 32, 0.0);
  const ImageGrid tenth(32, 32, 0.1);
  CHECK(psnr(tenth, zeros, 1.0) == doctest::Approx(20.0).epsilon(1e-12));

  const auto report = evaluate_quality(image, image, 1.0);
  CHECK(report.psnr_capped);
  CHECK(report.ssim == 1.0);

  const ImageGrid other(16, 16);
  CHECK_THROWS_AS(psnr(image, other, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(psnr(image, image, 0.0), std::invalid_argument);
}

TEST_CASE("psnr matches a naive recomputation and decreases with error") {
  const auto a = random_image(48, 11);
  const auto b = random_image(48, 12);
  double mse = 0.0;
  for (int r = 0; r < 48; ++r) {
    for (int c = 0; c < 48; ++c) {
      const double d = a.at(r, c) - b.at(r, c);
      mse += d * d;
    }
  }
  mse /= 48.0 * 48.0;
  const double expected = 10.0 * std::log10(1.0 / mse);
  CHECK(std::abs(psnr(a, b, 1.0) - expected) < 1e-10);

  // Strictly decreasing in MSE.
  ImageGrid closer(48, 48);
  for (std::size_t i = 0; i < closer.size(); ++i) closer[i] = 0.5 * (a[i] + b[i]);
  CHECK(psnr(closer, b, 1.0) > psnr(a, b, 1.0));
}

TEST_CASE("ssim of identical images is exactly one") {
  const auto image = random_image(24, 17);
  CHECK(ssim(image, image, 1.0) == 1.0);
}

TEST_CASE("a small constant shift only degrades the luminance term") {
  const auto reference = random_image(32, 23);
  ImageGrid shifted(32, 32);
  const double c = 0.02;
  for (std::size_t i = 0; i < reference.size(); ++i) shifted[i] = reference[i] + c;
  const double s = ssim(shifted, reference, 1.0);
  CHECK(s < 1.0);
  CHECK(s > 0.9);
}

TEST_CASE("ssim matches an independent reference implementation") {
  const auto a = random_image(40, 31);
  auto b = random_image(40, 32);
  // Correlate the pair somewhat so the score is not trivially near zero.
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = 0.7 * a[i] + 0.3 * b[i];
  CHECK(std::abs(ssim(a, b, 1.0) - ssim_oracle(a, b, 1.0)) < 1e-6);
  CHECK(std::abs(ssim(a, a, 1.0) - 1.0) == 0.0);
}

TEST_CASE("ssim rejects images smaller than its window") {
  const ImageGrid tiny(8, 8, 0.5);
  CHECK_THROWS_AS(ssim(tiny, tiny, 1.0), std::invalid_argument);
}
