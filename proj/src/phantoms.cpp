#include "emtomo/phantoms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "emtomo/parallel.hpp"
#include "emtomo/rng.hpp"

namespace emtomo {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Classical Shepp-Logan ellipses with the head at 1.0, so the composition
// stays inside [0, 1] and the interior keeps its low-contrast features.
const std::array<Ellipse, 10> kSheppLogan = {{
    {0.0, 0.0, 0.69, 0.92, 0.0, 1.0},
    {0.0, -0.0184, 0.6624, 0.874, 0.0, -0.98},
    {0.22, 0.0, 0.11, 0.31, -18.0 * kDeg, -0.02},
    {-0.22, 0.0, 0.16, 0.41, 18.0 * kDeg, -0.02},
    {0.0, 0.35, 0.21, 0.25, 0.0, 0.01},
    {0.0, 0.1, 0.046, 0.046, 0.0, 0.01},
    {0.0, -0.1, 0.046, 0.046, 0.0, 0.01},
    {-0.08, -0.605, 0.046, 0.023, 0.0, 0.01},
    {0.0, -0.605, 0.023, 0.023, 0.0, 0.01},
    {0.06, -0.605, 0.023, 0.046, 0.0, 0.01},
}};

bool contains(const Ellipse& e, double px, double py) {
  const double c = std::cos(e.rotation);
  const double s = std::sin(e.rotation);
  const double u = (px - e.center_x) * c + (py - e.center_y) * s;
  const double v = -(px - e.center_x) * s + (py - e.center_y) * c;
  return (u * u) / (e.semi_a * e.semi_a) + (v * v) / (e.semi_b * e.semi_b) <= 1.0;
}

}  // namespace

std::span<const Ellipse> shepp_logan_ellipses() { return kSheppLogan; }

ImageGrid rasterize_ellipses(int size, std::span<const Ellipse> ellipses) {
  ImageGrid image(size, size);
  parallel_for(size, [&](std::int64_t row) {
    for (int col = 0; col < size; ++col) {
      // Normalized coordinates: the physical square maps onto [-1, 1]^2.
      const double px = 2.0 * image.pixel_center_x(col);
      const double py = 2.0 * image.pixel_center_y(static_cast<int>(row));
      double value = 0.0;
      for (const Ellipse& e : ellipses) {
        if (contains(e, px, py)) value += e.intensity;
      }
      image.at(static_cast<int>(row), col) = value;
    }
  });
  return image;
}

ImageGrid shepp_logan(int size) {
  if (size < 16) throw std::invalid_argument("shepp_logan: size must be >= 16");
  ImageGrid image = rasterize_ellipses(size, kSheppLogan);
  for (auto& v : image.values()) v = std::clamp(v, 0.0, 1.0);
  return image;
}

ImageGrid random_ellipses(int size, int min_count, int max_count, std::uint64_t seed,
                          std::vector<Ellipse>* out_ellipses) {
  if (size < 16) throw std::invalid_argument("random_ellipses: size must be >= 16");
  if (min_count < 1 || min_count > max_count) {
    throw std::invalid_argument("random_ellipses: invalid count range");
  }

  SplitMix64 gen(mix_seed(seed, 0x454c4c49ULL));
  const int count =
      min_count + static_cast<int>(gen.next_below(static_cast<std::uint64_t>(max_count - min_count + 1)));
  std::vector<Ellipse> ellipses(static_cast<std::size_t>(count));
  for (Ellipse& e : ellipses) {
    e.center_x = -0.6 + 1.2 * gen.next_double();
    e.center_y = -0.6 + 1.2 * gen.next_double();
    e.semi_a = 0.05 + 0.45 * gen.next_double();
    e.semi_b = 0.05 + 0.45 * gen.next_double();
    e.rotation = std::numbers::pi * gen.next_double();
    e.intensity = 0.1 + 0.5 * gen.next_double();
  }

  ImageGrid image = rasterize_ellipses(size, ellipses);
  const double peak = image.max_value();
  if (peak > 0.0) {
    for (auto& v : image.values()) v /= peak;
  }
  if (out_ellipses) *out_ellipses = std::move(ellipses);
  return image;
}

ImageGrid load_raw_image(const std::filesystem::path& path, int width, int height,
                         double window_lo, double window_hi) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("load_raw_image: dimensions must be positive");
  }
  if (!(window_lo < window_hi)) {
    throw std::invalid_argument("load_raw_image: window must satisfy lo < hi");
  }

  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("load_raw_image: cannot open " + path.string());
  const auto file_size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);

  const std::size_t pixels = static_cast<std::size_t>(width) * height;
  std::vector<double> samples(pixels);
  if (file_size == pixels * sizeof(std::int16_t)) {
    std::vector<std::int16_t> raw(pixels);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(file_size));
    for (std::size_t i = 0; i < pixels; ++i) samples[i] = raw[i];
  } else if (file_size == pixels * sizeof(double)) {
    in.read(reinterpret_cast<char*>(samples.data()),
            static_cast<std::streamsize>(file_size));
  } else {
    throw std::runtime_error("load_raw_image: file size does not match " +
                             std::to_string(width) + "x" + std::to_string(height) +
                             " int16 or float64 samples");
  }
  if (!in) throw std::runtime_error("load_raw_image: read failed for " + path.string());

  ImageGrid image(width, height);
  const double scale = 1.0 / (window_hi - window_lo);
  for (std::size_t i = 0; i < pixels; ++i) {
    image[i] = std::clamp((samples[i] - window_lo) * scale, 0.0, 1.0);
  }
  return image;
}

}  // namespace emtomo
