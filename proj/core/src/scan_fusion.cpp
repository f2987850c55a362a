#include "mmot/scan_fusion.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "mmot/errors.hpp"
#include "mmot/ray_traversal.hpp"

namespace mmot {

MapIntegrator::MapIntegrator(OccupancyOctree map, SensorModel depth_model,
                             SensorModel proximity_model, FusionOptions options)
    : map_(std::move(map)),
      depth_model_(std::move(depth_model)),
      proximity_model_(std::move(proximity_model)),
      options_(options) {
  if (depth_model_.kind() != SensorKind::kDepthCamera) {
    throw ConfigError("depth model must be of the depth-camera class");
  }
  if (proximity_model_.kind() != SensorKind::kProximity) {
    throw ConfigError("proximity model must be of the proximity class");
  }
}

void MapIntegrator::accumulateBeam(const BeamMeasurement& beam,
                                   const SensorModel& model,
                                   SensorScratch& scratch) const {
  if (beam.hit) {
    const VoxelKey end_key = map_.keyForPoint(beam.endpoint);
    const double hit_value = model.hitLogOdds(beam.range);
    const auto [it, inserted] = scratch.hits.try_emplace(end_key, hit_value);
    if (!inserted && hit_value > it->second) {
      it->second = hit_value;
    }
  } else if (!options_.carve_on_miss) {
    return;
  }
  if (beam.endpoint == beam.origin) {
    // A zero-range hit (a reading clamped to the sensor origin) touches only
    // its endpoint voxel, which the hit map above already holds.
    return;
  }
  traverseRay(beam.origin, beam.endpoint, map_.resolution(),
              [&scratch](const VoxelKey& key) { scratch.traversed.insert(key); });
}

IntegrationStats MapIntegrator::integrateScan(const ScanBatch& batch) {
  if (batch.tick <= last_tick_) {
    throw SequencingError("batch tick " + std::to_string(batch.tick) +
                          " does not advance past tick " +
                          std::to_string(last_tick_));
  }

  // Canonical sensor order: the depth camera first, then proximity readings
  // by ascending id. Per-node sums then add contributions in a fixed order,
  // so permuting readings within the batch cannot change a single bit.
  std::vector<const ProximityReading*> readings;
  readings.reserve(batch.proximity_readings.size());
  for (const ProximityReading& reading : batch.proximity_readings) {
    readings.push_back(&reading);
  }
  std::sort(readings.begin(), readings.end(),
            [](const ProximityReading* a, const ProximityReading* b) {
              return a->sensor_id < b->sensor_id;
            });
  for (std::size_t n = 0; n + 1 < readings.size(); ++n) {
    if (readings[n]->sensor_id == readings[n + 1]->sensor_id) {
      throw InvalidInputError("duplicate proximity sensor id " +
                              std::to_string(readings[n]->sensor_id) +
                              " in one batch");
    }
  }

  const std::size_t unit_count = (batch.depth_frame ? 1 : 0) + readings.size();
  if (scratch_.size() < unit_count) {
    scratch_.resize(unit_count);
  }
  std::size_t used = 0;
  if (batch.depth_frame.has_value()) {
    SensorScratch& unit = scratch_[used++];
    unit.kind = SensorKind::kDepthCamera;
    unit.sensor_id = 0;
    unit.miss_log_odds = depth_model_.missLogOdds();
    unit.hits.clear();
    unit.traversed.clear();
    for (const BeamMeasurement& beam :
         beamsFromDepth(*batch.depth_frame, depth_model_)) {
      accumulateBeam(beam, depth_model_, unit);
    }
  }
  for (const ProximityReading* reading : readings) {
    SensorScratch& unit = scratch_[used++];
    unit.kind = SensorKind::kProximity;
    unit.sensor_id = reading->sensor_id;
    unit.miss_log_odds = proximity_model_.missLogOdds();
    unit.hits.clear();
    unit.traversed.clear();
    accumulateBeam(beamFromProximity(*reading, proximity_model_),
                   proximity_model_, unit);
  }

  IntegrationStats stats;
  stats.tick = batch.tick;
  node_sum_.clear();
  audit_.clear();
  std::unordered_map<VoxelKey, std::vector<SourceContribution>, VoxelKeyHash>
      breakdowns;

  const auto contribute = [&](const VoxelKey& key, double value,
                              SensorKind kind, int sensor_id) {
    node_sum_[key] += value;
    if (options_.record_audit) {
      breakdowns[key].push_back({kind, sensor_id, value});
    }
  };

  if (!options_.cross_sensor_dedup) {
    for (std::size_t n = 0; n < used; ++n) {
      const SensorScratch& unit = scratch_[n];
      for (const auto& [key, value] : unit.hits) {
        contribute(key, value, unit.kind, unit.sensor_id);
      }
      stats.hit_updates += unit.hits.size();
      for (const VoxelKey& key : unit.traversed) {
        if (!unit.hits.contains(key)) {
          contribute(key, unit.miss_log_odds, unit.kind, unit.sensor_id);
          ++stats.miss_updates;
        }
      }
    }
  } else {
    // Strongest evidence wins across sensors: the maximum hit log-odds if
    // any sensor hit the node, otherwise the most negative miss among the
    // sensors that traversed it. Exact ties keep the earlier unit in
    // canonical order.
    std::unordered_map<VoxelKey, SourceContribution, VoxelKeyHash> winners;
    std::unordered_set<VoxelKey, VoxelKeyHash> hit_keys;
    for (std::size_t n = 0; n < used; ++n) {
      const SensorScratch& unit = scratch_[n];
      for (const auto& [key, value] : unit.hits) {
        hit_keys.insert(key);
        const auto [it, inserted] = winners.try_emplace(
            key, SourceContribution{unit.kind, unit.sensor_id, value});
        if (!inserted && value > it->second.value) {
          it->second = {unit.kind, unit.sensor_id, value};
        }
      }
    }
    for (std::size_t n = 0; n < used; ++n) {
      const SensorScratch& unit = scratch_[n];
      for (const VoxelKey& key : unit.traversed) {
        if (hit_keys.contains(key)) {
          continue;
        }
        const auto [it, inserted] = winners.try_emplace(
            key,
            SourceContribution{unit.kind, unit.sensor_id, unit.miss_log_odds});
        if (!inserted && unit.miss_log_odds < it->second.value) {
          it->second = {unit.kind, unit.sensor_id, unit.miss_log_odds};
        }
      }
    }
    for (const auto& [key, winner] : winners) {
      contribute(key, winner.value, winner.kind, winner.sensor_id);
      if (hit_keys.contains(key)) {
        ++stats.hit_updates;
      } else {
        ++stats.miss_updates;
      }
    }
  }

  for (const auto& [key, delta] : node_sum_) {
    map_.applyUpdate(key, delta, batch.tick);
  }
  stats.nodes_touched = node_sum_.size();

  if (options_.record_audit) {
    audit_.reserve(node_sum_.size());
    for (auto& [key, delta] : node_sum_) {
      audit_.push_back({key, delta, std::move(breakdowns[key])});
    }
    std::sort(audit_.begin(), audit_.end(),
              [](const NodeDelta& a, const NodeDelta& b) { return a.key < b.key; });
  }

  last_tick_ = batch.tick;
  return stats;
}

}  // namespace mmot
