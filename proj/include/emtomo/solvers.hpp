#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "emtomo/geometry.hpp"
#include "emtomo/image.hpp"
#include "emtomo/projector.hpp"
#include "emtomo/sinogram.hpp"

namespace emtomo {

struct SolverConfig {
  double lambda = 0.0;       // TV weight
  double tau = 1.0;          // primal step
  double sigma = 1.0;        // dual step
  int full_iterations = 1;   // T
  double epsilon = 1e-12;    // denominator guard
  double init_value = 1.0;   // initial pixel value
  double dual_init = 0.0;    // scalar fill for the initial dual field
  std::size_t cache_budget_bytes = ViewSumCache::kDefaultBudgetBytes;

  // Optional warm start; overrides init_value when set.
  std::optional<ImageGrid> init_image;
};

/// Per-full-iteration diagnostics. psnr/ssim are NaN without a ground truth.
/// seconds carries wall time and is kept out of deterministic outputs.
struct IterationStats {
  int iteration = 0;
  double objective = 0.0;
  double tv = 0.0;
  double psnr = 0.0;
  double ssim = 0.0;
  double seconds = 0.0;
};

struct RunTrace {
  std::vector<IterationStats> iterations;
};

struct SolveResult {
  ImageGrid image;
  RunTrace trace;
};

/// Multiplicative EM update over the full ray set.
ImageGrid mlem(const Sinogram& noisy, const FanBeamGeometry& geometry,
               const SolverConfig& config, int image_width, RunTrace* trace = nullptr,
               const ImageGrid* ground_truth = nullptr);

/// EM update restricted to one view per subset, in scrambled order.
ImageGrid osem(const Sinogram& noisy, const FanBeamGeometry& geometry,
               const SubsetSchedule& schedule, const SolverConfig& config, int image_width,
               RunTrace* trace = nullptr, const ImageGrid* ground_truth = nullptr);

/// View-by-view primal-dual EM with the TV dual ascent, data-term prox and
/// over-relaxation applied per subset.
SolveResult osem_cp(const Sinogram& noisy, const FanBeamGeometry& geometry,
                    const SubsetSchedule& schedule, const SolverConfig& config,
                    int image_width, const ImageGrid* ground_truth = nullptr);

/// Alternates one full EM update with TV denoising of the iterate.
ImageGrid mlem_tv(const Sinogram& noisy, const FanBeamGeometry& geometry,
                  const SolverConfig& config, int tv_inner_iterations, int image_width,
                  RunTrace* trace = nullptr, const ImageGrid* ground_truth = nullptr);

/// View-by-view primal-dual scheme with the quadratic data term of OS-SART:
/// the primal step is a weighted-least-squares resolvent built from the SART
/// row/column normalizations. Negative pixels are clamped after each full
/// iteration.
ImageGrid oscp(const Sinogram& noisy, const FanBeamGeometry& geometry,
               const SubsetSchedule& schedule, const SolverConfig& config, int image_width,
               RunTrace* trace = nullptr, const ImageGrid* ground_truth = nullptr);

/// H(x) = sum_i [(Ax)_i - p_i ln (Ax)_i] + lambda * tv(x), with guarded logs.
double compute_em_objective(const ImageGrid& image, const Sinogram& noisy,
                            const FanBeamGeometry& geometry, double lambda,
                            double epsilon = 1e-12);

}  // namespace emtomo
