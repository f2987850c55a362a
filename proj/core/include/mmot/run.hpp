#ifndef MMOT_RUN_HPP
#define MMOT_RUN_HPP

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string_view>

#include "mmot/evaluation.hpp"
#include "mmot/ground_truth.hpp"
#include "mmot/occupancy_octree.hpp"
#include "mmot/scenario.hpp"

namespace mmot {

/// Aggregate integration counters across a whole run.
struct RunTotals {
  std::int64_t ticks = 0;
  std::int64_t depth_frames = 0;
  std::uint64_t hit_updates = 0;
  std::uint64_t miss_updates = 0;

  bool operator==(const RunTotals&) const = default;
};

struct RunResult {
  OccupancyOctree map;
  GroundTruthMap ground_truth;
  ComparisonReport report;
  RunTotals totals;
};

/// Simulates every proximity tick the duration covers, integrates each scan,
/// builds the analytic reference map, and tallies the comparison. When
/// `diagnostics` is given, each tick appends one newline-delimited record
/// with the tick index, time, node and update counters, and whether a depth
/// frame was rendered. Throws ConfigError for an invalid config.
RunResult runScenario(const ScenarioConfig& config,
                      std::ostream* diagnostics = nullptr);

/// runScenario plus artifact files: the map in binary form and the report as
/// text. Each file is written to a sibling temp file and renamed into place
/// on success, so a failed run never leaves a partial artifact. Throws
/// IoError on filesystem failures.
RunResult runScenarioToFiles(const ScenarioConfig& config,
                             const std::filesystem::path& map_path,
                             const std::filesystem::path& report_path,
                             std::ostream* diagnostics = nullptr);

/// Writes bytes to `path` via a sibling ".tmp" file renamed into place on
/// success; the temp file is removed on failure. Throws IoError.
void writeFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

}  // namespace mmot

#endif  // MMOT_RUN_HPP
