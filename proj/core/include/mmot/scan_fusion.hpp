#ifndef MMOT_SCAN_FUSION_HPP
#define MMOT_SCAN_FUSION_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mmot/occupancy_octree.hpp"
#include "mmot/sensor_model.hpp"
#include "mmot/voxel_key.hpp"

namespace mmot {

/// Everything one timestep delivers: at most one depth frame plus any number
/// of proximity readings with distinct sensor ids.
struct ScanBatch {
  std::int64_t tick = 0;
  std::optional<DepthFrame> depth_frame;
  std::vector<ProximityReading> proximity_readings;

  bool operator==(const ScanBatch&) const = default;
};

struct SourceContribution {
  SensorKind kind = SensorKind::kProximity;
  int sensor_id = 0;
  double value = 0.0;

  bool operator==(const SourceContribution&) const = default;
};

/// Audit record for one node in one tick: the applied delta and the
/// per-sensor contributions it sums (exactly, in summation order).
struct NodeDelta {
  VoxelKey key;
  double delta = 0.0;
  std::vector<SourceContribution> breakdown;
};

struct FusionOptions {
  /// Max-range miss beams carve free space along their whole length.
  bool carve_on_miss = true;
  /// When true, collapse to one update per node per tick regardless of
  /// source: strongest evidence wins (maximum hit log-odds if any sensor
  /// hit the node, otherwise the most negative miss log-odds among the
  /// sensors that traversed it). Off by default; the default behavior is
  /// the literal cross-sensor sum.
  bool cross_sensor_dedup = false;
  /// Retain per-node breakdowns for the last integrated tick.
  bool record_audit = false;
};

struct IntegrationStats {
  std::int64_t tick = 0;
  std::size_t nodes_touched = 0;
  std::size_t hit_updates = 0;
  std::size_t miss_updates = 0;

  bool operator==(const IntegrationStats&) const = default;
};

/// Integrates scan batches into an occupancy map with the two-stage rule:
/// each sensor first deduplicates its own beams (every hit endpoint gets
/// the hit log-odds for its range, duplicate hits combine by maximum,
/// traversed non-hit voxels get the sensor's miss log-odds once), then the
/// per-sensor contributions are summed per node across sensors and applied
/// as a single clamped update.
///
/// Summation order is canonical (depth camera first, then proximity
/// readings by ascending sensor id), so permuting readings within a batch
/// produces a bit-identical map.
class MapIntegrator {
 public:
  /// Throws ConfigError unless the models are one depth-camera and one
  /// proximity model.
  MapIntegrator(OccupancyOctree map, SensorModel depth_model,
                SensorModel proximity_model, FusionOptions options = {});

  /// Throws SequencingError unless batch.tick exceeds every previously
  /// integrated tick, InvalidInputError for duplicate proximity sensor ids
  /// or malformed readings.
  IntegrationStats integrateScan(const ScanBatch& batch);

  const OccupancyOctree& map() const { return map_; }
  OccupancyOctree takeMap() { return std::move(map_); }

  const FusionOptions& options() const { return options_; }
  std::int64_t lastTick() const { return last_tick_; }

  /// Per-node breakdowns for the most recent tick, sorted by key. Empty
  /// unless options.record_audit is set.
  const std::vector<NodeDelta>& lastAudit() const { return audit_; }

 private:
  struct SensorScratch {
    SensorKind kind = SensorKind::kProximity;
    int sensor_id = 0;
    double miss_log_odds = 0.0;
    std::unordered_map<VoxelKey, double, VoxelKeyHash> hits;
    std::unordered_set<VoxelKey, VoxelKeyHash> traversed;
  };

  void accumulateBeam(const BeamMeasurement& beam, const SensorModel& model,
                      SensorScratch& scratch) const;

  OccupancyOctree map_;
  SensorModel depth_model_;
  SensorModel proximity_model_;
  FusionOptions options_;
  std::int64_t last_tick_ = -1;
  std::vector<SensorScratch> scratch_;
  std::unordered_map<VoxelKey, double, VoxelKeyHash> node_sum_;
  std::vector<NodeDelta> audit_;
};

}  // namespace mmot

#endif  // MMOT_SCAN_FUSION_HPP
