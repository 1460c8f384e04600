#pragma once

#include <span>
#include <vector>

namespace emtomo {

/// Square attenuation image, row-major with row 0 at the top. The physical
/// side length is fixed at 1.0, so pixel_size() == 1.0 / width() and the
/// grid occupies [-0.5, 0.5]^2 with y increasing upward.
class ImageGrid {
 public:
  static constexpr double kPhysicalSide = 1.0;

  ImageGrid() = default;
  ImageGrid(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  double pixel_size() const { return pixel_size_; }
  std::size_t size() const { return values_.size(); }

  double& at(int row, int col) { return values_[static_cast<std::size_t>(row) * width_ + col]; }
  double at(int row, int col) const { return values_[static_cast<std::size_t>(row) * width_ + col]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double pixel_center_x(int col) const { return -0.5 * kPhysicalSide + (col + 0.5) * pixel_size_; }
  double pixel_center_y(int row) const { return 0.5 * kPhysicalSide - (row + 0.5) * pixel_size_; }

  /// Half of the physical diagonal; the reconstruction circle radius.
  double half_diagonal() const;

  bool all_finite() const;
  bool all_nonnegative() const;
  double min_value() const;
  double max_value() const;

  bool same_shape(const ImageGrid& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  double pixel_size_ = 0.0;
  std::vector<double> values_;
};

}  // namespace emtomo
