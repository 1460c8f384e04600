#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "emtomo/image.hpp"

namespace emtomo {

/// Per-pixel 2-vector field (horizontal, vertical) on the image grid.
class DualField {
 public:
  DualField() = default;
  DualField(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return hx_.size(); }

  std::span<double> horizontal() { return hx_; }
  std::span<const double> horizontal() const { return hx_; }
  std::span<double> vertical() { return hy_; }
  std::span<const double> vertical() const { return hy_; }

  bool all_finite() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> hx_;
  std::vector<double> hy_;
};

/// Forward differences with replicate (Neumann) boundary: the last column's
/// horizontal and last row's vertical components are zero. Unit grid spacing.
DualField gradient(const ImageGrid& image);
void gradient_into(const ImageGrid& image, DualField& out);

/// Exact negative adjoint of gradient: <grad x, q> == -<x, div q> for all x, q.
ImageGrid divergence(const DualField& field);
void divergence_into(const DualField& field, ImageGrid& out);

/// Isotropic discrete total variation: sum of per-pixel gradient magnitudes.
double tv_value(const ImageGrid& image);

/// Per-pixel radial projection onto the unit ball: q / max(1, |q|).
DualField dual_prox(const DualField& candidate);
void dual_prox_in_place(DualField& field);

/// Per-pixel coefficients of the one-dimensional data-term prox
///   u^2 + u * (colsum - anchor) - tau * previous * ratio_backproj = 0,
/// where colsum already carries the tau scaling of the step.
struct ProxCoefficients {
  ImageGrid colsum;          // tau * sum of view intersection lengths per pixel
  ImageGrid ratio_backproj;  // backprojection of measured / estimated ray sums
  ImageGrid anchor;          // x-tilde, the TV-displaced anchor
  ImageGrid previous;        // current iterate x^n
  double tau = 1.0;
};

/// Nonnegative root of u^2 + u*(colsum - anchor) - c = 0 with c >= 0, in a
/// cancellation-safe form. Shared by primal_prox_em and the view-by-view
/// solver loops.
inline double em_prox_root(double colsum, double anchor, double c) {
  const double b = colsum - anchor;
  const double disc = std::sqrt(b * b + 4.0 * c);
  if (b > 0.0) return b + disc == 0.0 ? 0.0 : 2.0 * c / (b + disc);
  return 0.5 * (disc - b);
}

/// Nonnegative root of the quadratic above, evaluated in a cancellation-safe
/// form; the returned image is always >= 0.
ImageGrid primal_prox_em(const ProxCoefficients& coeffs);

/// Approximate minimizer of 0.5*||u - noisy||^2 + weight * tv(u) by
/// primal-dual iteration. When objective_trace is given it records the value
/// after every iteration.
ImageGrid rof_tv_denoise(const ImageGrid& noisy, double weight, int iterations,
                         std::vector<double>* objective_trace = nullptr);

}  // namespace emtomo
