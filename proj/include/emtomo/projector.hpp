#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "emtomo/geometry.hpp"
#include "emtomo/image.hpp"
#include "emtomo/sinogram.hpp"

namespace emtomo {

/// Ray-driven forward projection: entry (i, k) is the exact intersection-length
/// weighted sum of pixels along the ray from the view-i source to cell k.
Sinogram forward_project(const ImageGrid& image, const FanBeamGeometry& geometry);

/// Single view of forward_project, bit-identical to the corresponding rows.
ViewSlice forward_project_view(const ImageGrid& image, const FanBeamGeometry& geometry,
                               int view_index);

/// In-place variants for solver loops that reuse buffers.
void forward_project_view_into(const ImageGrid& image, const FanBeamGeometry& geometry,
                               int view_index, std::span<double> out);
void back_project_view_accumulate(std::span<const double> slice,
                                  const FanBeamGeometry& geometry, int view_index,
                                  ImageGrid& accum);

/// Exact adjoint of forward_project_view onto a width x width grid.
ImageGrid back_project_view(const ViewSlice& slice, const FanBeamGeometry& geometry,
                            int image_width);

/// Exact adjoint of forward_project. Accumulates per-view contributions in a
/// fixed block order so the result is independent of the thread count.
ImageGrid back_project(const Sinogram& sinogram, const FanBeamGeometry& geometry,
                       int image_width);

/// Per-pixel sum of intersection lengths for one view; equals
/// back_project_view of an all-ones slice.
ImageGrid view_row_sums(const FanBeamGeometry& geometry, int view_index, int image_width);

/// Per-cell total intersection length of each ray in one view (the SART row
/// sums); equals forward_project_view of an all-ones image.
std::vector<double> view_ray_sums(const FanBeamGeometry& geometry, int view_index,
                                  int image_width);

/// Serves per-view row/ray sums to solver loops. Row-sum images are cached up
/// front when they fit the byte budget and recomputed per call otherwise; the
/// values are identical either way. Ray sums are always cached (tiny).
class ViewSumCache {
 public:
  static constexpr std::size_t kDefaultBudgetBytes = 256ull << 20;

  ViewSumCache(const FanBeamGeometry& geometry, int image_width,
               std::size_t budget_bytes = kDefaultBudgetBytes);

  /// Valid until the next row_sums call.
  const ImageGrid& row_sums(int view_index);
  const std::vector<double>& ray_sums(int view_index);
  bool caches_row_sums() const { return caches_row_sums_; }

 private:
  const FanBeamGeometry& geometry_;
  int image_width_;
  bool caches_row_sums_;
  std::vector<std::optional<ImageGrid>> row_cache_;
  std::vector<std::optional<std::vector<double>>> ray_cache_;
  ImageGrid scratch_;
};

namespace detail {

/// Walks the segment p0 -> p1 across the pixel grid of a width x width image
/// spanning [-0.5, 0.5]^2 and reports every (pixel index, intersection length)
/// it crosses. Both projection directions use this one traversal, which makes
/// the operator pair exactly adjoint.
template <typename Emit>
void traverse_ray(int grid_width, double x0, double y0, double x1, double y1, Emit&& emit);

}  // namespace detail

}  // namespace emtomo

#include "emtomo/projector_inl.hpp"
