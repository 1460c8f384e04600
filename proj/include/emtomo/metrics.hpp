#pragma once

#include "emtomo/image.hpp"

namespace emtomo {

/// PSNR reported for identical images (MSE == 0) as a capped sentinel.
inline constexpr double kPsnrCap = 99.0;

struct QualityReport {
  double psnr = 0.0;
  double ssim = 0.0;
  double data_range = 1.0;
  bool psnr_capped = false;
};

double mean_squared_error(const ImageGrid& test, const ImageGrid& reference);

/// 10 * log10(data_range^2 / MSE); kPsnrCap when MSE == 0.
double psnr(const ImageGrid& test, const ImageGrid& reference, double data_range);

/// Mean local SSIM over an 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, evaluated where the window fits entirely inside the image.
double ssim(const ImageGrid& test, const ImageGrid& reference, double data_range);

QualityReport evaluate_quality(const ImageGrid& test, const ImageGrid& reference,
                               double data_range);

}  // namespace emtomo
