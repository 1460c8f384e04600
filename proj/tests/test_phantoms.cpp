#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "emtomo/phantoms.hpp"
#include "support/oracles.hpp"

using namespace emtomo;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("shepp-logan stays in [0,1] with empty corners") {
  for (int size : {16, 64, 257}) {
    const auto image = shepp_logan(size);
    CHECK(image.min_value() >= 0.0);
    CHECK(image.max_value() <= 1.0);
    CHECK(image.at(0, 0) == 0.0);
    CHECK(image.at(0, size - 1) == 0.0);
    CHECK(image.at(size - 1, 0) == 0.0);
    CHECK(image.at(size - 1, size - 1) == 0.0);
  }
  CHECK_THROWS_AS(shepp_logan(15), std::invalid_argument);
}

TEST_CASE("shepp-logan matches the point-in-ellipse membership oracle") {
  const int size = 128;
  const auto image = shepp_logan(size);
  const auto ellipses = shepp_logan_ellipses();
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double px = 2.0 * image.pixel_center_x(c);
      const double py = 2.0 * image.pixel_center_y(r);
      double expected = 0.0;
      for (const auto& e : ellipses) {
        if (oracles::inside_ellipse(px, py, e.center_x, e.center_y, e.semi_a, e.semi_b,
                                    e.rotation)) {
          expected += e.intensity;
        }
      }
      expected = std::clamp(expected, 0.0, 1.0);
      CHECK(image.at(r, c) == expected);
    }
  }
}

TEST_CASE("shepp-logan is left-right symmetric up to rasterization") {
  const int size = 256;
  const auto image = shepp_logan(size);
  std::size_t mismatches = 0;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size / 2; ++c) {
      if (std::abs(image.at(r, c) - image.at(r, size - 1 - c)) > 1e-12) ++mismatches;
    }
  }
  // Only pixels whose mirrored centers straddle ellipse boundaries may differ;
  // the total ellipse perimeter spans a few thousand pixels at this size.
  CHECK(mismatches < static_cast<std::size_t>(size) * 10);
}

TEST_CASE("random ellipse phantom is deterministic and normalized") {
  std::vector<Ellipse> logged;
  const auto a = random_ellipses(256, 3, 8, 1, &logged);
  const auto b = random_ellipses(256, 3, 8, 1);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

  CHECK(a.min_value() >= 0.0);
  CHECK(a.max_value() <= 1.0);
  CHECK(a.max_value() == 1.0);  // rescaled by its peak
  CHECK(logged.size() >= 3);
  CHECK(logged.size() <= 8);

  const auto c = random_ellipses(256, 3, 8, 2);
  bool different = false;
  for (std::size_t i = 0; i < a.size() && !different; ++i) different = a[i] != c[i];
  CHECK(different);

  CHECK_THROWS_AS(random_ellipses(256, 0, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_ellipses(256, 5, 4, 1), std::invalid_argument);
}

TEST_CASE("random ellipse pixels match a recomputation from the logged list") {
  std::vector<Ellipse> logged;
  const auto image = random_ellipses(256, 3, 8, 1, &logged);

  // Recompute raw sums with the oracle membership test, then apply the same
  // peak rescale.
  const int size = image.width();
  std::vector<double> raw(static_cast<std::size_t>(size) * size, 0.0);
  double peak = 0.0;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double px = 2.0 * image.pixel_center_x(c);
      const double py = 2.0 * image.pixel_center_y(r);
      double v = 0.0;
      for (const auto& e : logged) {
        if (oracles::inside_ellipse(px, py, e.center_x, e.center_y, e.semi_a, e.semi_b,
                                    e.rotation)) {
          v += e.intensity;
        }
      }
      raw[static_cast<std::size_t>(r) * size + c] = v;
      peak = std::max(peak, v);
    }
  }
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double expected = peak > 0.0 ? raw[static_cast<std::size_t>(r) * size + c] / peak : 0.0;
      CHECK(image.at(r, c) == expected);
    }
  }
}

TEST_CASE("raw image loading applies the affine window with clamping") {
  const auto path = temp_file("emtomo_raw_test.i16");
  {
    // 4x4 int16 samples including out-of-window values.
    const std::int16_t samples[16] = {-1024, 2048, 512,   -2000, 0,    100,  -512, 1024,
                                      2047,  -1023, 3000, 1,     -1,   700,  900,  -300};
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(samples), sizeof(samples));
  }
  const double lo = -1024.0;
  const double hi = 2048.0;
  const auto image = load_raw_image(path, 4, 4, lo, hi);

  CHECK(image.at(0, 0) == 0.0);                       // sample at lo
  CHECK(image.at(0, 1) == 1.0);                       // sample at hi
  CHECK(image.at(0, 3) == 0.0);                       // below lo, clamped
  CHECK(image.at(2, 2) == 1.0);                       // above hi, clamped
  CHECK(image.at(1, 1) == doctest::Approx((100.0 - lo) / (hi - lo)).epsilon(1e-15));
  CHECK(image.at(3, 1) == doctest::Approx((700.0 - lo) / (hi - lo)).epsilon(1e-15));

  CHECK_THROWS(load_raw_image(path, 5, 5, lo, hi));   // size mismatch
  CHECK_THROWS(load_raw_image(path, 4, 4, hi, lo));   // inverted window
  CHECK_THROWS(load_raw_image(temp_file("emtomo_missing.raw"), 4, 4, lo, hi));
  std::filesystem::remove(path);
}

TEST_CASE("raw image loading accepts float64 samples") {
  const auto path = temp_file("emtomo_raw_test.f64");
  {
    const double samples[4] = {0.0, 0.25, 0.5, 1.0};
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(samples), sizeof(samples));
  }
  const auto image = load_raw_image(path, 2, 2, 0.0, 1.0);
  CHECK(image.at(0, 0) == 0.0);
  CHECK(image.at(0, 1) == 0.25);
  CHECK(image.at(1, 0) == 0.5);
  CHECK(image.at(1, 1) == 1.0);
  std::filesystem::remove(path);
}
