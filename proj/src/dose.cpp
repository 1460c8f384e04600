#include "emtomo/dose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "emtomo/parallel.hpp"
#include "emtomo/rng.hpp"

namespace emtomo {

Sinogram simulate_low_dose(const Sinogram& clean, const DoseModel& model) {
  if (!(model.incident_photons > 0.0)) {
    throw std::invalid_argument("simulate_low_dose: incident_photons must be > 0");
  }
  if (model.zero_count_floor < 1) {
    throw std::invalid_argument("simulate_low_dose: zero_count_floor must be >= 1");
  }
  if (!clean.all_finite() || !clean.all_nonnegative()) {
    throw std::invalid_argument("simulate_low_dose: clean sinogram must be finite and >= 0");
  }

  Sinogram noisy(clean.num_angles(), clean.detector_cells());
  const double i0 = model.incident_photons;
  const auto src = clean.values();
  auto dst = noisy.values();
  parallel_for(clean.num_angles(), [&](std::int64_t view) {
    const std::size_t begin = static_cast<std::size_t>(view) * clean.detector_cells();
    for (std::size_t i = begin; i < begin + static_cast<std::size_t>(clean.detector_cells()); ++i) {
      SplitMix64 gen(mix_seed(model.seed, i));
      const double mean = i0 * std::exp(-src[i]);
      const std::int64_t counts =
          std::max(poisson_draw(gen, mean), model.zero_count_floor);
      dst[i] = std::max(0.0, -std::log(static_cast<double>(counts) / i0));
    }
  });
  return noisy;
}

}  // namespace emtomo
