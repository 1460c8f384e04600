#include "emtomo/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "emtomo/parallel.hpp"

namespace emtomo {

namespace {

constexpr int kWindow = 11;
constexpr int kRadius = kWindow / 2;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;

void check_pair(const ImageGrid& a, const ImageGrid& b, double data_range) {
  if (!a.same_shape(b)) throw std::invalid_argument("metrics: image shape mismatch");
  if (!(data_range > 0.0)) throw std::invalid_argument("metrics: data_range must be > 0");
}

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> taps{};
  double total = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kRadius;
    taps[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
    total += taps[static_cast<std::size_t>(i)];
  }
  for (double& t : taps) t /= total;
  return taps;
}

// Separable Gaussian restricted to fully interior windows. Output is
// (w - 2r) x (h - 2r), row-major.
std::vector<double> blur_valid(std::span<const double> src, int w, int h,
                               const std::array<double, kWindow>& taps) {
  const int vw = w - 2 * kRadius;
  const int vh = h - 2 * kRadius;
  std::vector<double> horizontal(static_cast<std::size_t>(vw) * h);
  parallel_for(h, [&](std::int64_t row) {
    const std::size_t base = static_cast<std::size_t>(row) * w;
    for (int col = 0; col < vw; ++col) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        s += taps[static_cast<std::size_t>(k)] * src[base + static_cast<std::size_t>(col + k)];
      }
      horizontal[static_cast<std::size_t>(row) * vw + static_cast<std::size_t>(col)] = s;
    }
  });
  std::vector<double> out(static_cast<std::size_t>(vw) * vh);
  parallel_for(vh, [&](std::int64_t row) {
    for (int col = 0; col < vw; ++col) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        s += taps[static_cast<std::size_t>(k)] *
             horizontal[static_cast<std::size_t>(row + k) * vw + static_cast<std::size_t>(col)];
      }
      out[static_cast<std::size_t>(row) * vw + static_cast<std::size_t>(col)] = s;
    }
  });
  return out;
}

}  // namespace

double mean_squared_error(const ImageGrid& test, const ImageGrid& reference) {
  if (!test.same_shape(reference)) throw std::invalid_argument("metrics: image shape mismatch");
  const auto a = test.values();
  const auto b = reference.values();
  const double total = parallel_sum(static_cast<std::int64_t>(a.size()), [&](std::int64_t i) {
    const double d = a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
    return d * d;
  });
  return total / static_cast<double>(a.size());
}

double psnr(const ImageGrid& test, const ImageGrid& reference, double data_range) {
  check_pair(test, reference, data_range);
  const double mse = mean_squared_error(test, reference);
  if (mse == 0.0) return kPsnrCap;
  return 10.0 * std::log10(data_range * data_range / mse);
}

double ssim(const ImageGrid& test, const ImageGrid& reference, double data_range) {
  check_pair(test, reference, data_range);
  const int w = test.width();
  const int h = test.height();
  if (w < kWindow || h < kWindow) {
    throw std::invalid_argument("ssim: image smaller than the 11x11 window");
  }

  const auto taps = gaussian_taps();
  const auto x = test.values();
  const auto y = reference.values();
  const std::size_t n = x.size();
  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }

  const auto mu_x = blur_valid(x, w, h, taps);
  const auto mu_y = blur_valid(y, w, h, taps);
  const auto e_xx = blur_valid(xx, w, h, taps);
  const auto e_yy = blur_valid(yy, w, h, taps);
  const auto e_xy = blur_valid(xy, w, h, taps);

  const double c1 = (kK1 * data_range) * (kK1 * data_range);
  const double c2 = (kK2 * data_range) * (kK2 * data_range);
  const std::int64_t valid = static_cast<std::int64_t>(mu_x.size());
  const double total = parallel_sum(valid, [&](std::int64_t idx) {
    const std::size_t i = static_cast<std::size_t>(idx);
    const double mx = mu_x[i];
    const double my = mu_y[i];
    const double var_x = e_xx[i] - mx * mx;
    const double var_y = e_yy[i] - my * my;
    const double cov = e_xy[i] - mx * my;
    return ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
           ((mx * mx + my * my + c1) * (var_x + var_y + c2));
  });
  return total / static_cast<double>(valid);
}

QualityReport evaluate_quality(const ImageGrid& test, const ImageGrid& reference,
                               double data_range) {
  QualityReport report;
  report.data_range = data_range;
  report.psnr = psnr(test, reference, data_range);
  report.psnr_capped = report.psnr == kPsnrCap && mean_squared_error(test, reference) == 0.0;
  report.ssim = ssim(test, reference, data_range);
  return report;
}

}  // namespace emtomo
