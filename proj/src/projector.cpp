#include "emtomo/projector.hpp"

#include <cmath>
#include <stdexcept>

#include "emtomo/parallel.hpp"

namespace emtomo {

namespace {

void check_view(const FanBeamGeometry& geometry, int view_index) {
  if (view_index < 0 || view_index >= geometry.num_angles) {
    throw std::invalid_argument("view index out of range");
  }
}

void check_geometry(const FanBeamGeometry& geometry, int image_width) {
  if (image_width <= 0) throw std::invalid_argument("image width must be positive");
  ImageGrid probe(image_width, image_width);
  geometry.validate(probe.half_diagonal());
}

// Shared per-view kernel; forward_project concatenates these outputs, so the
// view op is bit-identical to the matching sinogram rows by construction.
void project_view_into(const ImageGrid& image, const FanBeamGeometry& geometry,
                       int view_index, std::span<double> out) {
  const auto source = geometry.source_position(view_index);
  const double* pixels = image.values().data();
  const int width = image.width();
  parallel_for(geometry.detector_cells, [&](std::int64_t cell) {
    const auto target = geometry.detector_cell_center(view_index, static_cast<int>(cell));
    double sum = 0.0;
    detail::traverse_ray(width, source[0], source[1], target[0], target[1],
                         [&](std::size_t pixel, double len) { sum += len * pixels[pixel]; });
    out[static_cast<std::size_t>(cell)] = sum;
  });
}

void back_project_view_into(std::span<const double> slice, const FanBeamGeometry& geometry,
                            int view_index, ImageGrid& accum) {
  const auto source = geometry.source_position(view_index);
  double* pixels = accum.values().data();
  const int width = accum.width();
  for (int cell = 0; cell < geometry.detector_cells; ++cell) {
    const double weight = slice[static_cast<std::size_t>(cell)];
    const auto target = geometry.detector_cell_center(view_index, cell);
    detail::traverse_ray(width, source[0], source[1], target[0], target[1],
                         [&](std::size_t pixel, double len) { pixels[pixel] += len * weight; });
  }
}

}  // namespace

Sinogram forward_project(const ImageGrid& image, const FanBeamGeometry& geometry) {
  check_geometry(geometry, image.width());
  Sinogram sinogram(geometry.num_angles, geometry.detector_cells);
  parallel_for(geometry.num_angles, [&](std::int64_t view) {
    project_view_into(image, geometry, static_cast<int>(view),
                      sinogram.view(static_cast<int>(view)));
  });
  return sinogram;
}

ViewSlice forward_project_view(const ImageGrid& image, const FanBeamGeometry& geometry,
                               int view_index) {
  check_geometry(geometry, image.width());
  check_view(geometry, view_index);
  ViewSlice slice;
  slice.view_index = view_index;
  slice.values.resize(static_cast<std::size_t>(geometry.detector_cells));
  project_view_into(image, geometry, view_index, slice.values);
  return slice;
}

void forward_project_view_into(const ImageGrid& image, const FanBeamGeometry& geometry,
                               int view_index, std::span<double> out) {
  check_view(geometry, view_index);
  if (out.size() != static_cast<std::size_t>(geometry.detector_cells)) {
    throw std::invalid_argument("forward_project_view_into: output size mismatch");
  }
  project_view_into(image, geometry, view_index, out);
}

void back_project_view_accumulate(std::span<const double> slice,
                                  const FanBeamGeometry& geometry, int view_index,
                                  ImageGrid& accum) {
  check_view(geometry, view_index);
  if (slice.size() != static_cast<std::size_t>(geometry.detector_cells)) {
    throw std::invalid_argument("back_project_view_accumulate: slice size mismatch");
  }
  back_project_view_into(slice, geometry, view_index, accum);
}

ImageGrid back_project_view(const ViewSlice& slice, const FanBeamGeometry& geometry,
                            int image_width) {
  check_geometry(geometry, image_width);
  check_view(geometry, slice.view_index);
  if (static_cast<int>(slice.values.size()) != geometry.detector_cells) {
    throw std::invalid_argument("back_project_view: slice shape mismatch");
  }
  ImageGrid image(image_width, image_width);
  back_project_view_into(slice.values, geometry, slice.view_index, image);
  return image;
}

ImageGrid back_project(const Sinogram& sinogram, const FanBeamGeometry& geometry,
                       int image_width) {
  check_geometry(geometry, image_width);
  if (sinogram.num_angles() != geometry.num_angles ||
      sinogram.detector_cells() != geometry.detector_cells) {
    throw std::invalid_argument("back_project: sinogram shape mismatch");
  }
  // Views are accumulated into a fixed number of blocks and the blocks summed
  // in order, so the result does not depend on the thread count.
  constexpr int kBlocks = 8;
  const int blocks = std::min(kBlocks, geometry.num_angles);
  std::vector<ImageGrid> partial(static_cast<std::size_t>(blocks),
                                 ImageGrid(image_width, image_width));
  parallel_for(blocks, [&](std::int64_t b) {
    ImageGrid& accum = partial[static_cast<std::size_t>(b)];
    for (int view = static_cast<int>(b); view < geometry.num_angles; view += blocks) {
      back_project_view_into(sinogram.view(view), geometry, view, accum);
    }
  });
  ImageGrid image(image_width, image_width);
  for (const ImageGrid& p : partial) {
    auto dst = image.values();
    auto src = p.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  return image;
}

ImageGrid view_row_sums(const FanBeamGeometry& geometry, int view_index, int image_width) {
  check_geometry(geometry, image_width);
  check_view(geometry, view_index);
  ImageGrid image(image_width, image_width);
  const std::vector<double> ones(static_cast<std::size_t>(geometry.detector_cells), 1.0);
  back_project_view_into(ones, geometry, view_index, image);
  return image;
}

std::vector<double> view_ray_sums(const FanBeamGeometry& geometry, int view_index,
                                  int image_width) {
  check_geometry(geometry, image_width);
  check_view(geometry, view_index);
  const ImageGrid ones(image_width, image_width, 1.0);
  std::vector<double> sums(static_cast<std::size_t>(geometry.detector_cells));
  project_view_into(ones, geometry, view_index, sums);
  return sums;
}

ViewSumCache::ViewSumCache(const FanBeamGeometry& geometry, int image_width,
                           std::size_t budget_bytes)
    : geometry_(geometry), image_width_(image_width) {
  const std::size_t pixels = static_cast<std::size_t>(image_width) * image_width;
  const std::size_t bytes =
      static_cast<std::size_t>(geometry.num_angles) * pixels * sizeof(double);
  caches_row_sums_ = bytes <= budget_bytes;
  row_cache_.resize(static_cast<std::size_t>(geometry.num_angles));
  ray_cache_.resize(static_cast<std::size_t>(geometry.num_angles));
}

const ImageGrid& ViewSumCache::row_sums(int view_index) {
  check_view(geometry_, view_index);
  if (caches_row_sums_) {
    auto& slot = row_cache_[static_cast<std::size_t>(view_index)];
    if (!slot) slot = view_row_sums(geometry_, view_index, image_width_);
    return *slot;
  }
  scratch_ = view_row_sums(geometry_, view_index, image_width_);
  return scratch_;
}

const std::vector<double>& ViewSumCache::ray_sums(int view_index) {
  check_view(geometry_, view_index);
  auto& slot = ray_cache_[static_cast<std::size_t>(view_index)];
  if (!slot) slot = view_ray_sums(geometry_, view_index, image_width_);
  return *slot;
}

}  // namespace emtomo
