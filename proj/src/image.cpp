#include "emtomo/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emtomo {

ImageGrid::ImageGrid(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("ImageGrid: dimensions must be positive");
  }
  if (width != height) {
    throw std::invalid_argument("ImageGrid: only square grids are supported");
  }
  pixel_size_ = kPhysicalSide / width;
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

double ImageGrid::half_diagonal() const {
  return 0.5 * kPhysicalSide * std::sqrt(2.0);
}

bool ImageGrid::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool ImageGrid::all_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

double ImageGrid::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ImageGrid::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

}  // namespace emtomo
