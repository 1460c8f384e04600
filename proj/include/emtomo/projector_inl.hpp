#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace emtomo::detail {

template <typename Emit>
void traverse_ray(int grid_width, double x0, double y0, double x1, double y1, Emit&& emit) {
  const int n = grid_width;
  const double half = 0.5 * ImageGrid::kPhysicalSide;
  const double h = ImageGrid::kPhysicalSide / n;

  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const double length = std::hypot(dx, dy);
  if (length == 0.0) return;

  // Clip the segment parameter t in [0, 1] against the grid slabs.
  double t_enter = 0.0;
  double t_exit = 1.0;
  const auto clip_axis = [&](double p, double d) {
    if (d == 0.0) return -half <= p && p <= half;
    double ta = (-half - p) / d;
    double tb = (half - p) / d;
    if (ta > tb) std::swap(ta, tb);
    t_enter = std::max(t_enter, ta);
    t_exit = std::min(t_exit, tb);
    return true;
  };
  if (!clip_axis(x0, dx) || !clip_axis(y0, dy)) return;
  if (t_enter >= t_exit) return;

  // Next gridline crossings in t, stepped by a constant per axis.
  const double inf = std::numeric_limits<double>::infinity();
  double tx = inf;
  double dt_x = inf;
  if (dx != 0.0) {
    dt_x = h / std::abs(dx);
    const double x_enter = x0 + t_enter * dx;
    const double cell = (x_enter + half) / h;
    const double boundary = dx > 0.0 ? std::floor(cell) + 1.0 : std::ceil(cell) - 1.0;
    tx = ((boundary * h - half) - x0) / dx;
    if (tx <= t_enter) tx += dt_x;
  }
  double ty = inf;
  double dt_y = inf;
  if (dy != 0.0) {
    dt_y = h / std::abs(dy);
    const double y_enter = y0 + t_enter * dy;
    const double cell = (y_enter + half) / h;
    const double boundary = dy > 0.0 ? std::floor(cell) + 1.0 : std::ceil(cell) - 1.0;
    ty = ((boundary * h - half) - y0) / dy;
    if (ty <= t_enter) ty += dt_y;
  }

  // March interval by interval; the midpoint fixes the pixel robustly even
  // when a crossing grazes a corner.
  double t = t_enter;
  const int max_steps = 2 * n + 4;
  for (int step = 0; step < max_steps && t < t_exit; ++step) {
    const double t_next = std::min({tx, ty, t_exit});
    if (t_next > t) {
      const double tm = 0.5 * (t + t_next);
      const double mx = x0 + tm * dx;
      const double my = y0 + tm * dy;
      int col = static_cast<int>(std::floor((mx + half) / h));
      int row_from_bottom = static_cast<int>(std::floor((my + half) / h));
      col = std::clamp(col, 0, n - 1);
      row_from_bottom = std::clamp(row_from_bottom, 0, n - 1);
      const int row = n - 1 - row_from_bottom;
      emit(static_cast<std::size_t>(row) * n + col, (t_next - t) * length);
    }
    if (tx <= t_next) tx += dt_x;
    if (ty <= t_next) ty += dt_y;
    t = t_next;
  }
}

}  // namespace emtomo::detail
