#include "emtomo/variational.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "emtomo/parallel.hpp"

namespace emtomo {

DualField::DualField(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("DualField: dimensions must be positive");
  }
  hx_.assign(static_cast<std::size_t>(width) * height, 0.0);
  hy_.assign(static_cast<std::size_t>(width) * height, 0.0);
}

bool DualField::all_finite() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(hx_.begin(), hx_.end(), finite) &&
         std::all_of(hy_.begin(), hy_.end(), finite);
}

void gradient_into(const ImageGrid& image, DualField& out) {
  const int w = image.width();
  const int h = image.height();
  if (out.width() != w || out.height() != h) out = DualField(w, h);
  const auto src = image.values();
  auto gx = out.horizontal();
  auto gy = out.vertical();
  parallel_for(h, [&](std::int64_t row) {
    const std::size_t base = static_cast<std::size_t>(row) * w;
    for (int col = 0; col < w; ++col) {
      const std::size_t i = base + static_cast<std::size_t>(col);
      gx[i] = col + 1 < w ? src[i + 1] - src[i] : 0.0;
      gy[i] = row + 1 < h ? src[i + w] - src[i] : 0.0;
    }
  });
}

DualField gradient(const ImageGrid& image) {
  DualField out(image.width(), image.height());
  gradient_into(image, out);
  return out;
}

void divergence_into(const DualField& field, ImageGrid& out) {
  const int w = field.width();
  const int h = field.height();
  if (out.width() != w || out.height() != h) out = ImageGrid(w, h);
  const auto qx = field.horizontal();
  const auto qy = field.vertical();
  auto dst = out.values();
  parallel_for(h, [&](std::int64_t row) {
    const std::size_t base = static_cast<std::size_t>(row) * w;
    for (int col = 0; col < w; ++col) {
      const std::size_t i = base + static_cast<std::size_t>(col);
      double v = 0.0;
      if (col + 1 < w) v += qx[i];
      if (col > 0) v -= qx[i - 1];
      if (row + 1 < h) v += qy[i];
      if (row > 0) v -= qy[i - w];
      dst[i] = v;
    }
  });
}

ImageGrid divergence(const DualField& field) {
  ImageGrid out(field.width(), field.height());
  divergence_into(field, out);
  return out;
}

double tv_value(const ImageGrid& image) {
  const int w = image.width();
  const int h = image.height();
  const auto src = image.values();
  return parallel_sum(static_cast<std::int64_t>(image.size()), [&](std::int64_t idx) {
    const int row = static_cast<int>(idx) / w;
    const int col = static_cast<int>(idx) % w;
    const std::size_t i = static_cast<std::size_t>(idx);
    const double gx = col + 1 < w ? src[i + 1] - src[i] : 0.0;
    const double gy = row + 1 < h ? src[i + w] - src[i] : 0.0;
    return std::hypot(gx, gy);
  });
}

// Vectors already feasible within this slack pass through untouched, which
// makes the projection exactly idempotent in floating point.
constexpr double kBallSlack = 1e-12;

void dual_prox_in_place(DualField& field) {
  auto qx = field.horizontal();
  auto qy = field.vertical();
  parallel_for(field.height(), [&](std::int64_t row) {
    const std::size_t base = static_cast<std::size_t>(row) * field.width();
    for (std::size_t i = base; i < base + static_cast<std::size_t>(field.width()); ++i) {
      const double mag = std::hypot(qx[i], qy[i]);
      if (mag > 1.0 + kBallSlack) {
        qx[i] /= mag;
        qy[i] /= mag;
      }
    }
  });
}

DualField dual_prox(const DualField& candidate) {
  DualField out = candidate;
  dual_prox_in_place(out);
  return out;
}

ImageGrid primal_prox_em(const ProxCoefficients& coeffs) {
  const ImageGrid& colsum = coeffs.colsum;
  if (!colsum.same_shape(coeffs.ratio_backproj) || !colsum.same_shape(coeffs.anchor) ||
      !colsum.same_shape(coeffs.previous)) {
    throw std::invalid_argument("primal_prox_em: coefficient shape mismatch");
  }
  if (!(coeffs.tau > 0.0)) throw std::invalid_argument("primal_prox_em: tau must be > 0");

  ImageGrid out(colsum.width(), colsum.height());
  const auto cs = colsum.values();
  const auto rb = coeffs.ratio_backproj.values();
  const auto an = coeffs.anchor.values();
  const auto pv = coeffs.previous.values();
  const double tau = coeffs.tau;
  auto dst = out.values();

  std::atomic<bool> bad{false};
  parallel_for(colsum.height(), [&](std::int64_t row) {
    const std::size_t base = static_cast<std::size_t>(row) * colsum.width();
    for (std::size_t i = base; i < base + static_cast<std::size_t>(colsum.width()); ++i) {
      const double c = tau * pv[i] * rb[i];
      if (!std::isfinite(cs[i]) || !std::isfinite(an[i]) || !std::isfinite(c) || c < 0.0) {
        bad.store(true);
        return;
      }
      dst[i] = em_prox_root(cs[i], an[i], c);
    }
  });
  if (bad.load()) {
    throw std::invalid_argument("primal_prox_em: nonfinite or invalid coefficients");
  }
  return out;
}

ImageGrid rof_tv_denoise(const ImageGrid& noisy, double weight, int iterations,
                         std::vector<double>* objective_trace) {
  if (!(weight > 0.0)) throw std::invalid_argument("rof_tv_denoise: weight must be > 0");
  if (iterations < 1) throw std::invalid_argument("rof_tv_denoise: iterations must be >= 1");

  const int w = noisy.width();
  const int h = noisy.height();
  const auto g = noisy.values();

  // Accelerated primal-dual iteration: the data term is 1-strongly convex, so
  // the steps contract with theta = 1/sqrt(1 + 2*tau). Initial steps satisfy
  // sigma * tau * ||K||^2 < 1 with K = weight * grad, ||K||^2 <= 8*weight^2.
  double sigma = 1.0 / (weight * std::sqrt(8.0) * 1.005);
  double tau = sigma;

  ImageGrid x = noisy;
  ImageGrid x_bar = noisy;
  ImageGrid div_q(w, h);
  DualField q(w, h);
  DualField grad_bar(w, h);

  if (objective_trace) objective_trace->clear();

  for (int it = 0; it < iterations; ++it) {
    gradient_into(x_bar, grad_bar);
    {
      auto qx = q.horizontal();
      auto qy = q.vertical();
      const auto gx = grad_bar.horizontal();
      const auto gy = grad_bar.vertical();
      parallel_for(h, [&](std::int64_t row) {
        const std::size_t base = static_cast<std::size_t>(row) * w;
        for (std::size_t i = base; i < base + static_cast<std::size_t>(w); ++i) {
          double nx = qx[i] + sigma * weight * gx[i];
          double ny = qy[i] + sigma * weight * gy[i];
          const double mag = std::hypot(nx, ny);
          if (mag > 1.0 + kBallSlack) {
            nx /= mag;
            ny /= mag;
          }
          qx[i] = nx;
          qy[i] = ny;
        }
      });
    }
    divergence_into(q, div_q);
    const double theta = 1.0 / std::sqrt(1.0 + 2.0 * tau);
    {
      auto xv = x.values();
      auto xb = x_bar.values();
      const auto dq = div_q.values();
      parallel_for(h, [&](std::int64_t row) {
        const std::size_t base = static_cast<std::size_t>(row) * w;
        for (std::size_t i = base; i < base + static_cast<std::size_t>(w); ++i) {
          const double x_tilde = xv[i] + tau * weight * dq[i];
          const double x_new = (x_tilde + tau * g[i]) / (1.0 + tau);
          xb[i] = x_new + theta * (x_new - xv[i]);
          xv[i] = x_new;
        }
      });
    }
    tau *= theta;
    sigma /= theta;
    if (objective_trace) {
      const double fidelity = 0.5 * parallel_sum(static_cast<std::int64_t>(x.size()),
                                                 [&](std::int64_t i) {
                                                   const double d = x[static_cast<std::size_t>(i)] -
                                                                    g[static_cast<std::size_t>(i)];
                                                   return d * d;
                                                 });
      objective_trace->push_back(fidelity + weight * tv_value(x));
    }
  }
  return x;
}

}  // namespace emtomo
