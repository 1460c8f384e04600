#pragma once

#include <cstdint>

#include "emtomo/sinogram.hpp"

namespace emtomo {

/// Photon-count model for low-dose simulation.
struct DoseModel {
  double incident_photons = 1e5;       // I0 per ray
  std::uint64_t seed = 0;
  std::int64_t zero_count_floor = 1;   // minimum retained count before the log
};

/// Per entry: draws detected counts from Poisson(I0 * exp(-p_clean)), floors
/// them at zero_count_floor, and returns -ln(counts / I0) clamped at 0.
/// Randomness is keyed by (seed, entry index), so the output is independent
/// of evaluation order and thread count.
Sinogram simulate_low_dose(const Sinogram& clean, const DoseModel& model);

}  // namespace emtomo
