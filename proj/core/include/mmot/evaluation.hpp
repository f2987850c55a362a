#ifndef MMOT_EVALUATION_HPP
#define MMOT_EVALUATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mmot/ground_truth.hpp"
#include "mmot/occupancy_octree.hpp"
#include "mmot/sensor_model.hpp"

namespace mmot {

/// Map-versus-reference tallies. Each reference-occupied voxel lands in
/// exactly one of occupied / missed, and missed splits into voxels the map
/// never touched versus voxels it wrongly carved free. `incorrect` counts
/// map-occupied voxels inside the workspace that are neither reference
/// shell nor solid interior.
struct ComparisonReport {
  std::int64_t occupied = 0;
  std::int64_t free = 0;
  std::int64_t missed = 0;
  std::int64_t missed_unknown = 0;
  std::int64_t missed_free = 0;
  std::int64_t incorrect = 0;

  std::string scenario_id;
  std::uint64_t seed = 0;
  double resolution = 0.0;
  double duration = 0.0;

  bool operator==(const ComparisonReport&) const = default;
};

/// Tallies the generated map against the reference.
/// Throws ComparisonError when the resolutions differ.
ComparisonReport compareMaps(const GroundTruthMap& gt,
                             const OccupancyOctree& generated);

/// One-key-per-line text document with a version header; metadata rides in
/// comment lines.
std::string writeReportText(const ComparisonReport& report);

struct CurveRow {
  double distance = 0.0;
  double p_prox = 0.0;
  double p_depth = 0.0;

  bool operator==(const CurveRow&) const = default;
};

/// Occupancy probability of a single hit at each sampled distance for both
/// models: rows at d_min, d_min + step, ... plus each model's dead-zone
/// boundary exactly, ascending. d_max is inclusive when the grid lands on
/// it. Throws InvalidInputError when d_min >= d_max, step is not positive,
/// or the range leaves either model's operational range.
std::vector<CurveRow> emitUpdateCurves(const SensorModel& proximity,
                                       const SensorModel& depth, double d_min,
                                       double d_max, double step);

/// Comma-separated rows with a one-line header.
std::string writeCurvesCsv(const std::vector<CurveRow>& rows);

}  // namespace mmot

#endif  // MMOT_EVALUATION_HPP
