#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace emtomo {

/// Uniform angles k * 2*pi / num_angles for k = 0 .. num_angles-1.
std::vector<double> make_uniform_angles(int num_angles);

/// Circular fan-beam acquisition with a flat detector. The source rotates at
/// source_axis_distance from the origin; the detector line sits
/// axis_detector_distance beyond the origin, perpendicular to the central ray.
struct FanBeamGeometry {
  int num_angles = 0;
  std::vector<double> angles;  // radians in [0, 2*pi)
  int detector_cells = 0;
  double detector_cell_spacing = 0.0;
  double source_axis_distance = 0.0;
  double axis_detector_distance = 0.0;

  double source_detector_distance() const {
    return source_axis_distance + axis_detector_distance;
  }

  /// Signed offset of a cell center from the detector midpoint.
  double cell_offset(int cell) const {
    return (cell - 0.5 * (detector_cells - 1)) * detector_cell_spacing;
  }

  std::array<double, 2> source_position(int view) const;
  std::array<double, 2> detector_cell_center(int view, int cell) const;

  /// Throws std::invalid_argument when the source sits inside the
  /// reconstruction circle of the given radius, or counts are degenerate.
  void validate(double image_half_diagonal) const;
};

/// Geometry with the defaults used throughout: source at twice the physical
/// image diagonal, detector mirrored at the same distance, and cell spacing
/// sized so the detector spans the full fan over the reconstruction circle
/// (with a 1% margin).
FanBeamGeometry default_fan_geometry(int num_angles, int detector_cells);

/// One view per subset, in scrambled order.
struct SubsetSchedule {
  int num_subsets = 0;
  std::vector<int> order;
  std::uint64_t seed = 0;
};

SubsetSchedule make_subset_schedule(int num_angles, std::uint64_t seed);

}  // namespace emtomo
