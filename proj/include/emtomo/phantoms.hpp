#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "emtomo/image.hpp"

namespace emtomo {

/// Additive ellipse in normalized [-1, 1]^2 coordinates (y up).
struct Ellipse {
  double center_x = 0.0;
  double center_y = 0.0;
  double semi_a = 0.0;
  double semi_b = 0.0;
  double rotation = 0.0;   // radians
  double intensity = 0.0;  // additive gray value
};

/// The classical low-contrast Shepp-Logan parameter set, head intensity 1.
std::span<const Ellipse> shepp_logan_ellipses();

/// Sums ellipse intensities at pixel centers (point sampling, no anti-alias).
ImageGrid rasterize_ellipses(int size, std::span<const Ellipse> ellipses);

/// Shepp-Logan head phantom with values clamped to [0, 1]. Requires size >= 16.
ImageGrid shepp_logan(int size);

/// Seeded overlapping-ellipse phantom, rescaled into [0, 1] by its maximum.
/// Parameter ranges: centers uniform in [-0.6, 0.6]^2, semi-axes in
/// [0.05, 0.5], rotation in [0, pi), intensity in [0.1, 0.6], count uniform in
/// [min_count, max_count]. The drawn list is returned through out_ellipses so
/// runs can be logged and reproduced.
ImageGrid random_ellipses(int size, int min_count, int max_count, std::uint64_t seed,
                          std::vector<Ellipse>* out_ellipses = nullptr);

/// Reads a headerless row-major raw image and windows it into [0, 1].
/// The sample type is inferred from the file size: int16 little-endian
/// (HU values) or float64 little-endian.
ImageGrid load_raw_image(const std::filesystem::path& path, int width, int height,
                         double window_lo, double window_hi);

}  // namespace emtomo
