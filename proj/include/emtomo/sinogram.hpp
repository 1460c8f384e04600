#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace emtomo {

/// Line-integral measurements, row-major by angle.
class Sinogram {
 public:
  Sinogram() = default;
  Sinogram(int num_angles, int detector_cells, double fill = 0.0);

  int num_angles() const { return num_angles_; }
  int detector_cells() const { return detector_cells_; }
  std::size_t size() const { return values_.size(); }

  double& at(int view, int cell) {
    return values_[static_cast<std::size_t>(view) * detector_cells_ + cell];
  }
  double at(int view, int cell) const {
    return values_[static_cast<std::size_t>(view) * detector_cells_ + cell];
  }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> view(int view_index) {
    return {values_.data() + static_cast<std::size_t>(view_index) * detector_cells_,
            static_cast<std::size_t>(detector_cells_)};
  }
  std::span<const double> view(int view_index) const {
    return {values_.data() + static_cast<std::size_t>(view_index) * detector_cells_,
            static_cast<std::size_t>(detector_cells_)};
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;
  bool all_nonnegative() const;

 private:
  int num_angles_ = 0;
  int detector_cells_ = 0;
  std::vector<double> values_;
};

/// One view's worth of detector readings.
struct ViewSlice {
  int view_index = 0;
  std::vector<double> values;
};

/// Binary container: one JSON header line {"num_angles":..,"detector_cells":..}
/// followed by little-endian 64-bit floats, row-major by angle.
void write_sinogram(const Sinogram& sinogram, const std::filesystem::path& path);
Sinogram read_sinogram(const std::filesystem::path& path);

}  // namespace emtomo
