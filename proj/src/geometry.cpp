#include "emtomo/geometry.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "emtomo/image.hpp"
#include "emtomo/rng.hpp"

namespace emtomo {

std::vector<double> make_uniform_angles(int num_angles) {
  if (num_angles < 1) {
    throw std::invalid_argument("make_uniform_angles: num_angles must be >= 1");
  }
  std::vector<double> angles(static_cast<std::size_t>(num_angles));
  const double step = 2.0 * std::numbers::pi / num_angles;
  for (int k = 0; k < num_angles; ++k) angles[static_cast<std::size_t>(k)] = k * step;
  return angles;
}

std::array<double, 2> FanBeamGeometry::source_position(int view) const {
  const double a = angles[static_cast<std::size_t>(view)];
  return {source_axis_distance * std::cos(a), source_axis_distance * std::sin(a)};
}

std::array<double, 2> FanBeamGeometry::detector_cell_center(int view, int cell) const {
  const double a = angles[static_cast<std::size_t>(view)];
  const double c = std::cos(a);
  const double s = std::sin(a);
  const double offset = cell_offset(cell);
  // Detector midpoint opposite the source; cells along the tangential direction.
  return {-axis_detector_distance * c - offset * s,
          -axis_detector_distance * s + offset * c};
}

void FanBeamGeometry::validate(double image_half_diagonal) const {
  if (num_angles < 1 || static_cast<int>(angles.size()) != num_angles) {
    throw std::invalid_argument("FanBeamGeometry: inconsistent angle count");
  }
  if (detector_cells < 1 || detector_cell_spacing <= 0.0) {
    throw std::invalid_argument("FanBeamGeometry: invalid detector");
  }
  if (axis_detector_distance < 0.0) {
    throw std::invalid_argument("FanBeamGeometry: negative detector distance");
  }
  if (source_axis_distance <= image_half_diagonal) {
    throw std::invalid_argument(
        "FanBeamGeometry: source must lie outside the reconstruction circle");
  }
}

FanBeamGeometry default_fan_geometry(int num_angles, int detector_cells) {
  if (num_angles < 1 || detector_cells < 1) {
    throw std::invalid_argument("default_fan_geometry: counts must be >= 1");
  }
  FanBeamGeometry g;
  g.num_angles = num_angles;
  g.angles = make_uniform_angles(num_angles);
  g.detector_cells = detector_cells;

  const double diagonal = ImageGrid::kPhysicalSide * std::sqrt(2.0);
  g.source_axis_distance = 2.0 * diagonal;
  g.axis_detector_distance = g.source_axis_distance;

  // Half-width so tangent rays to the reconstruction circle land on the
  // detector, plus margin.
  const double circle_radius = 0.5 * diagonal;
  const double fan_half_angle = std::asin(circle_radius / g.source_axis_distance);
  const double half_width =
      1.01 * g.source_detector_distance() * std::tan(fan_half_angle);
  g.detector_cell_spacing = 2.0 * half_width / detector_cells;
  return g;
}

SubsetSchedule make_subset_schedule(int num_angles, std::uint64_t seed) {
  if (num_angles < 1) {
    throw std::invalid_argument("make_subset_schedule: num_angles must be >= 1");
  }
  SubsetSchedule schedule;
  schedule.num_subsets = num_angles;
  schedule.seed = seed;
  schedule.order.resize(static_cast<std::size_t>(num_angles));
  std::iota(schedule.order.begin(), schedule.order.end(), 0);
  seeded_shuffle(schedule.order, seed);
  return schedule;
}

}  // namespace emtomo
