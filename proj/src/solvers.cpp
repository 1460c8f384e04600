#include "emtomo/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>

#include "emtomo/metrics.hpp"
#include "emtomo/parallel.hpp"
#include "emtomo/variational.hpp"

namespace emtomo {

namespace {

using Clock = std::chrono::steady_clock;

void validate_common(const Sinogram& noisy, const FanBeamGeometry& geometry,
                     const SolverConfig& config, int image_width) {
  if (noisy.num_angles() != geometry.num_angles ||
      noisy.detector_cells() != geometry.detector_cells) {
    throw std::invalid_argument("solver: sinogram shape does not match geometry");
  }
  if (!noisy.all_finite() || !noisy.all_nonnegative()) {
    throw std::invalid_argument("solver: sinogram must be finite and nonnegative");
  }
  if (image_width <= 0) throw std::invalid_argument("solver: image width must be positive");
  if (config.full_iterations < 1) {
    throw std::invalid_argument("solver: full_iterations must be >= 1");
  }
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("solver: epsilon must be > 0");
  if (!(config.init_value > 0.0)) {
    throw std::invalid_argument("solver: init_value must be > 0");
  }
  if (config.init_image &&
      (config.init_image->width() != image_width ||
       config.init_image->height() != image_width)) {
    throw std::invalid_argument("solver: init_image shape mismatch");
  }
}

ImageGrid initial_image(const SolverConfig& config, int image_width) {
  if (config.init_image) return *config.init_image;
  return ImageGrid(image_width, image_width, config.init_value);
}

void validate_schedule(const SubsetSchedule& schedule, const FanBeamGeometry& geometry) {
  if (schedule.num_subsets != geometry.num_angles ||
      static_cast<int>(schedule.order.size()) != geometry.num_angles) {
    throw std::invalid_argument("solver: schedule does not match geometry");
  }
  std::vector<bool> seen(schedule.order.size(), false);
  for (int v : schedule.order) {
    if (v < 0 || v >= schedule.num_subsets || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("solver: schedule order is not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

void validate_primal_dual(const SolverConfig& config) {
  if (config.lambda < 0.0) throw std::invalid_argument("solver: lambda must be >= 0");
  if (!(config.tau > 0.0) || !(config.sigma > 0.0)) {
    throw std::invalid_argument("solver: tau and sigma must be > 0");
  }
  // The discrete gradient has squared norm at most 8 on the unit-spacing grid.
  if (config.sigma * config.tau * config.lambda * config.lambda * 8.0 > 1.0) {
    std::cerr << "emtomo: warning: sigma*tau*lambda^2*8 = "
              << config.sigma * config.tau * config.lambda * config.lambda * 8.0
              << " > 1; the primal-dual iteration may diverge\n";
  }
}

void check_finite_iterate(const ImageGrid& x, int iteration, const char* solver) {
  if (!x.all_finite()) {
    throw std::runtime_error(std::string(solver) + ": nonfinite iterate at full iteration " +
                             std::to_string(iteration));
  }
}

void record_trace(RunTrace* trace, int iteration, const ImageGrid& x, const Sinogram& noisy,
                  const FanBeamGeometry& geometry, const SolverConfig& config,
                  const ImageGrid* truth, Clock::time_point start) {
  if (!trace) return;
  IterationStats stats;
  stats.iteration = iteration;
  stats.objective = compute_em_objective(x, noisy, geometry, config.lambda, config.epsilon);
  stats.tv = tv_value(x);
  if (truth) {
    stats.psnr = psnr(x, *truth, 1.0);
    stats.ssim = ssim(x, *truth, 1.0);
  } else {
    stats.psnr = std::numeric_limits<double>::quiet_NaN();
    stats.ssim = std::numeric_limits<double>::quiet_NaN();
  }
  stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  trace->iterations.push_back(stats);
}

}  // namespace

double compute_em_objective(const ImageGrid& image, const Sinogram& noisy,
                            const FanBeamGeometry& geometry, double lambda,
                            double epsilon) {
  const Sinogram estimate = forward_project(image, geometry);
  const auto est = estimate.values();
  const auto obs = noisy.values();
  const double data = parallel_sum(static_cast<std::int64_t>(est.size()), [&](std::int64_t i) {
    const std::size_t k = static_cast<std::size_t>(i);
    const double s = std::max(est[k], epsilon);
    return s - obs[k] * std::log(s);
  });
  return data + lambda * tv_value(image);
}

ImageGrid mlem(const Sinogram& noisy, const FanBeamGeometry& geometry,
               const SolverConfig& config, int image_width, RunTrace* trace,
               const ImageGrid* ground_truth) {
  validate_common(noisy, geometry, config, image_width);
  const auto start = Clock::now();

  ImageGrid x = initial_image(config, image_width);
  const Sinogram ones(geometry.num_angles, geometry.detector_cells, 1.0);
  const ImageGrid colsum = back_project(ones, geometry, image_width);

  Sinogram ratio(geometry.num_angles, geometry.detector_cells);
  for (int it = 0; it < config.full_iterations; ++it) {
    const Sinogram estimate = forward_project(x, geometry);
    const auto est = estimate.values();
    const auto obs = noisy.values();
    auto r = ratio.values();
    parallel_for(static_cast<std::int64_t>(r.size()), [&](std::int64_t i) {
      const std::size_t k = static_cast<std::size_t>(i);
      r[k] = obs[k] / std::max(est[k], config.epsilon);
    });
    const ImageGrid update = back_project(ratio, geometry, image_width);
    auto xv = x.values();
    const auto cs = colsum.values();
    const auto up = update.values();
    parallel_for(x.height(), [&](std::int64_t row) {
      const std::size_t base = static_cast<std::size_t>(row) * x.width();
      for (std::size_t i = base; i < base + static_cast<std::size_t>(x.width()); ++i) {
        // Pixels the ray set never crosses carry no equations and keep
        // their value, matching the per-view convention.
        if (cs[i] > config.epsilon) xv[i] = xv[i] * up[i] / cs[i];
      }
    });
    check_finite_iterate(x, it, "mlem");
    record_trace(trace, it, x, noisy, geometry, config, ground_truth, start);
  }
  return x;
}

ImageGrid osem(const Sinogram& noisy, const FanBeamGeometry& geometry,
               const SubsetSchedule& schedule, const SolverConfig& config, int image_width,
               RunTrace* trace, const ImageGrid* ground_truth) {
  validate_common(noisy, geometry, config, image_width);
  validate_schedule(schedule, geometry);
  const auto start = Clock::now();

  ImageGrid x = initial_image(config, image_width);
  ViewSumCache cache(geometry, image_width, config.cache_budget_bytes);
  std::vector<double> estimate(static_cast<std::size_t>(geometry.detector_cells));
  std::vector<double> ratio(static_cast<std::size_t>(geometry.detector_cells));
  ImageGrid update(image_width, image_width);

  for (int it = 0; it < config.full_iterations; ++it) {
    for (int view : schedule.order) {
      forward_project_view_into(x, geometry, view, estimate);
      const auto obs = noisy.view(view);
      for (std::size_t k = 0; k < ratio.size(); ++k) {
        ratio[k] = obs[k] / std::max(estimate[k], config.epsilon);
      }
      std::fill(update.values().begin(), update.values().end(), 0.0);
      back_project_view_accumulate(ratio, geometry, view, update);
      const ImageGrid& rowsum = cache.row_sums(view);
      auto xv = x.values();
      const auto up = update.values();
      const auto rs = rowsum.values();
      parallel_for(x.height(), [&](std::int64_t row) {
        const std::size_t base = static_cast<std::size_t>(row) * x.width();
        for (std::size_t i = base; i < base + static_cast<std::size_t>(x.width()); ++i) {
          // A view that barely grazes a pixel carries no usable measurement
          // for it; the pixel keeps its value for that subset.
          if (rs[i] > config.epsilon) xv[i] = xv[i] * up[i] / rs[i];
        }
      });
    }
    check_finite_iterate(x, it, "osem");
    record_trace(trace, it, x, noisy, geometry, config, ground_truth, start);
  }
  return x;
}

SolveResult osem_cp(const Sinogram& noisy, const FanBeamGeometry& geometry,
                    const SubsetSchedule& schedule, const SolverConfig& config,
                    int image_width, const ImageGrid* ground_truth) {
  validate_common(noisy, geometry, config, image_width);
  validate_schedule(schedule, geometry);
  validate_primal_dual(config);
  const auto start = Clock::now();

  const int w = image_width;
  ImageGrid x = initial_image(config, w);
  ImageGrid x_bar = x;
  DualField q(w, w);
  if (config.dual_init != 0.0) {
    std::fill(q.horizontal().begin(), q.horizontal().end(), config.dual_init);
    std::fill(q.vertical().begin(), q.vertical().end(), config.dual_init);
    dual_prox_in_place(q);
  }

  ViewSumCache cache(geometry, w, config.cache_budget_bytes);
  DualField grad_bar(w, w);
  ImageGrid div_q(w, w);
  ImageGrid ratio_backproj(w, w);
  std::vector<double> estimate(static_cast<std::size_t>(geometry.detector_cells));
  std::vector<double> ratio(static_cast<std::size_t>(geometry.detector_cells));

  const double sigma_lambda = config.sigma * config.lambda;
  const double tau = config.tau;
  const double tau_lambda = tau * config.lambda;

  SolveResult result;
  for (int it = 0; it < config.full_iterations; ++it) {
    for (int view : schedule.order) {
      // Dual ascent on the over-relaxed iterate, then ball projection.
      gradient_into(x_bar, grad_bar);
      {
        auto qx = q.horizontal();
        auto qy = q.vertical();
        const auto gx = grad_bar.horizontal();
        const auto gy = grad_bar.vertical();
        parallel_for(w, [&](std::int64_t row) {
          const std::size_t base = static_cast<std::size_t>(row) * w;
          for (std::size_t i = base; i < base + static_cast<std::size_t>(w); ++i) {
            double nx = qx[i] + sigma_lambda * gx[i];
            double ny = qy[i] + sigma_lambda * gy[i];
            const double mag = std::sqrt(nx * nx + ny * ny);
            if (mag > 1.0 + 1e-12) {
              nx /= mag;
              ny /= mag;
            }
            qx[i] = nx;
            qy[i] = ny;
          }
        });
      }
      divergence_into(q, div_q);

      // View-restricted EM coefficients at the current iterate.
      forward_project_view_into(x, geometry, view, estimate);
      const auto obs = noisy.view(view);
      for (std::size_t k = 0; k < ratio.size(); ++k) {
        ratio[k] = obs[k] / std::max(estimate[k], config.epsilon);
      }
      std::fill(ratio_backproj.values().begin(), ratio_backproj.values().end(), 0.0);
      back_project_view_accumulate(ratio, geometry, view, ratio_backproj);
      const ImageGrid& rowsum = cache.row_sums(view);

      // Data-term prox at the TV-displaced anchor, then over-relaxation.
      {
        auto xv = x.values();
        auto xb = x_bar.values();
        const auto rb = ratio_backproj.values();
        const auto rs = rowsum.values();
        const auto dq = div_q.values();
        parallel_for(w, [&](std::int64_t row) {
          const std::size_t base = static_cast<std::size_t>(row) * w;
          for (std::size_t i = base; i < base + static_cast<std::size_t>(w); ++i) {
            const double anchor = xv[i] + tau_lambda * dq[i];
            const double x_new = em_prox_root(tau * rs[i], anchor, tau * xv[i] * rb[i]);
            xb[i] = 2.0 * x_new - xv[i];
            xv[i] = x_new;
          }
        });
      }
    }
    check_finite_iterate(x, it, "osem_cp");
    record_trace(&result.trace, it, x, noisy, geometry, config, ground_truth, start);
  }
  result.image = std::move(x);
  return result;
}

ImageGrid mlem_tv(const Sinogram& noisy, const FanBeamGeometry& geometry,
                  const SolverConfig& config, int tv_inner_iterations, int image_width,
                  RunTrace* trace, const ImageGrid* ground_truth) {
  validate_common(noisy, geometry, config, image_width);
  if (config.lambda < 0.0) throw std::invalid_argument("mlem_tv: lambda must be >= 0");
  if (config.lambda > 0.0 && tv_inner_iterations < 1) {
    throw std::invalid_argument("mlem_tv: tv_inner_iterations must be >= 1");
  }
  const auto start = Clock::now();

  ImageGrid x = initial_image(config, image_width);
  const Sinogram ones(geometry.num_angles, geometry.detector_cells, 1.0);
  const ImageGrid colsum = back_project(ones, geometry, image_width);
  Sinogram ratio(geometry.num_angles, geometry.detector_cells);

  for (int it = 0; it < config.full_iterations; ++it) {
    const Sinogram estimate = forward_project(x, geometry);
    const auto est = estimate.values();
    const auto obs = noisy.values();
    auto r = ratio.values();
    parallel_for(static_cast<std::int64_t>(r.size()), [&](std::int64_t i) {
      const std::size_t k = static_cast<std::size_t>(i);
      r[k] = obs[k] / std::max(est[k], config.epsilon);
    });
    const ImageGrid update = back_project(ratio, geometry, image_width);
    auto xv = x.values();
    const auto cs = colsum.values();
    const auto up = update.values();
    parallel_for(x.height(), [&](std::int64_t row) {
      const std::size_t base = static_cast<std::size_t>(row) * x.width();
      for (std::size_t i = base; i < base + static_cast<std::size_t>(x.width()); ++i) {
        if (cs[i] > config.epsilon) xv[i] = xv[i] * up[i] / cs[i];
      }
    });
    if (config.lambda > 0.0) {
      x = rof_tv_denoise(x, config.lambda, tv_inner_iterations);
      for (auto& v : x.values()) v = std::max(v, 0.0);
    }
    check_finite_iterate(x, it, "mlem_tv");
    record_trace(trace, it, x, noisy, geometry, config, ground_truth, start);
  }
  return x;
}

ImageGrid oscp(const Sinogram& noisy, const FanBeamGeometry& geometry,
               const SubsetSchedule& schedule, const SolverConfig& config, int image_width,
               RunTrace* trace, const ImageGrid* ground_truth) {
  validate_common(noisy, geometry, config, image_width);
  validate_schedule(schedule, geometry);
  validate_primal_dual(config);
  const auto start = Clock::now();

  const int w = image_width;
  ImageGrid x = initial_image(config, w);
  ImageGrid x_bar = x;
  DualField q(w, w);
  if (config.dual_init != 0.0) {
    std::fill(q.horizontal().begin(), q.horizontal().end(), config.dual_init);
    std::fill(q.vertical().begin(), q.vertical().end(), config.dual_init);
    dual_prox_in_place(q);
  }

  ViewSumCache cache(geometry, w, config.cache_budget_bytes);
  DualField grad_bar(w, w);
  ImageGrid div_q(w, w);
  ImageGrid residual_backproj(w, w);
  std::vector<double> estimate(static_cast<std::size_t>(geometry.detector_cells));
  std::vector<double> residual(static_cast<std::size_t>(geometry.detector_cells));

  const double sigma_lambda = config.sigma * config.lambda;
  const double tau = config.tau;
  const double tau_lambda = tau * config.lambda;

  for (int it = 0; it < config.full_iterations; ++it) {
    for (int view : schedule.order) {
      gradient_into(x_bar, grad_bar);
      {
        auto qx = q.horizontal();
        auto qy = q.vertical();
        const auto gx = grad_bar.horizontal();
        const auto gy = grad_bar.vertical();
        parallel_for(w, [&](std::int64_t row) {
          const std::size_t base = static_cast<std::size_t>(row) * w;
          for (std::size_t i = base; i < base + static_cast<std::size_t>(w); ++i) {
            double nx = qx[i] + sigma_lambda * gx[i];
            double ny = qy[i] + sigma_lambda * gy[i];
            const double mag = std::sqrt(nx * nx + ny * ny);
            if (mag > 1.0 + 1e-12) {
              nx /= mag;
              ny /= mag;
            }
            qx[i] = nx;
            qy[i] = ny;
          }
        });
      }
      divergence_into(q, div_q);

      // SART step: ray residuals normalized by ray sums, spread by column sums.
      forward_project_view_into(x, geometry, view, estimate);
      const auto obs = noisy.view(view);
      const auto& ray_sums = cache.ray_sums(view);
      for (std::size_t k = 0; k < residual.size(); ++k) {
        residual[k] = (obs[k] - estimate[k]) / std::max(ray_sums[k], config.epsilon);
      }
      std::fill(residual_backproj.values().begin(), residual_backproj.values().end(), 0.0);
      back_project_view_accumulate(residual, geometry, view, residual_backproj);
      const ImageGrid& colsum = cache.row_sums(view);

      // Weighted-least-squares resolvent around the SART target.
      {
        auto xv = x.values();
        auto xb = x_bar.values();
        const auto rb = residual_backproj.values();
        const auto cs = colsum.values();
        const auto dq = div_q.values();
        parallel_for(w, [&](std::int64_t row) {
          const std::size_t base = static_cast<std::size_t>(row) * w;
          for (std::size_t i = base; i < base + static_cast<std::size_t>(w); ++i) {
            const double anchor = xv[i] + tau_lambda * dq[i];
            const double target = xv[i] + rb[i] / std::max(cs[i], config.epsilon);
            const double x_new = (anchor + tau * cs[i] * target) / (1.0 + tau * cs[i]);
            xb[i] = 2.0 * x_new - xv[i];
            xv[i] = x_new;
          }
        });
      }
    }
    for (auto& v : x.values()) v = std::max(v, 0.0);
    check_finite_iterate(x, it, "oscp");
    record_trace(trace, it, x, noisy, geometry, config, ground_truth, start);
  }
  return x;
}

}  // namespace emtomo
