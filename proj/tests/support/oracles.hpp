#pragma once

// Independent reference computations used to pin expected values. These stay
// deliberately naive and share no code with the library paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "emtomo/image.hpp"

namespace oracles {

/// Length of the intersection between segment (x0,y0)-(x1,y1) and the
/// axis-aligned box [bx0,bx1]x[by0,by1], via slab clipping.
inline double segment_box_length(double x0, double y0, double x1, double y1,
                                 double bx0, double bx1, double by0, double by1) {
  const double dx = x1 - x0;
  const double dy = y1 - y0;
  double t0 = 0.0, t1 = 1.0;
  const auto clip = [&](double p, double d, double lo, double hi) {
    if (d == 0.0) return p >= lo && p <= hi;
    double ta = (lo - p) / d;
    double tb = (hi - p) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    return true;
  };
  if (!clip(x0, dx, bx0, bx1) || !clip(y0, dy, by0, by1)) return 0.0;
  if (t0 >= t1) return 0.0;
  return (t1 - t0) * std::hypot(dx, dy);
}

/// Intersection length of the segment with one pixel of a width x width image
/// spanning [-0.5, 0.5]^2, row 0 on top.
inline double segment_pixel_length(int grid_width, int row, int col, double x0, double y0,
                                   double x1, double y1) {
  const double h = emtomo::ImageGrid::kPhysicalSide / grid_width;
  const double bx0 = -0.5 + col * h;
  const double by1 = 0.5 - row * h;
  return segment_box_length(x0, y0, x1, y1, bx0, bx0 + h, by1 - h, by1);
}

/// Signed distance from the origin to the infinite line through the segment.
inline double line_offset_from_origin(double x0, double y0, double x1, double y1) {
  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const double len = std::hypot(dx, dy);
  return (x0 * dy - y0 * dx) / len;
}

/// Membership test against a rotated ellipse in normalized [-1,1]^2 coords.
inline bool inside_ellipse(double px, double py, double cx, double cy, double a, double b,
                           double rotation) {
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  const double u = (px - cx) * c + (py - cy) * s;
  const double v = -(px - cx) * s + (py - cy) * c;
  return (u * u) / (a * a) + (v * v) / (b * b) <= 1.0;
}

}  // namespace oracles
