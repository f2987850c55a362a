#include "mmot/occupancy_octree.hpp"

#include <algorithm>
#include <cmath>

#include "mmot/errors.hpp"

namespace mmot {

OccupancyOctree::OccupancyOctree(double resolution, double clamp_min,
                                 double clamp_max, double occupancy_threshold)
    : resolution_(resolution),
      clamp_min_(clamp_min),
      clamp_max_(clamp_max),
      occupancy_threshold_(occupancy_threshold) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw InvalidInputError("resolution must be finite and positive");
  }
  if (!std::isfinite(clamp_min) || !std::isfinite(clamp_max) ||
      !std::isfinite(occupancy_threshold)) {
    throw InvalidInputError("clamp bounds and threshold must be finite");
  }
  if (!(clamp_min < 0.0 && 0.0 < clamp_max)) {
    throw InvalidInputError("clamp bounds must straddle the prior log-odds 0");
  }
}

double OccupancyOctree::applyUpdate(const VoxelKey& key, double delta,
                                    std::int64_t tick) {
  if (!std::isfinite(delta)) {
    throw InvalidInputError("log-odds delta must be finite");
  }
  OccupancyNode& node = nodes_[key];
  node.log_odds = std::clamp(node.log_odds + delta, clamp_min_, clamp_max_);
  node.last_update_tick = tick;
  return node.log_odds;
}

OccupancyState OccupancyOctree::occupancyState(const VoxelKey& key) const {
  const auto it = nodes_.find(key);
  if (it == nodes_.end()) {
    return OccupancyState::kUnknown;
  }
  return it->second.log_odds > occupancy_threshold_ ? OccupancyState::kOccupied
                                                    : OccupancyState::kFree;
}

double OccupancyOctree::probability(const VoxelKey& key) const {
  const auto it = nodes_.find(key);
  const double l = it == nodes_.end() ? 0.0 : it->second.log_odds;
  return 1.0 - 1.0 / (1.0 + std::exp(l));
}

const OccupancyNode* OccupancyOctree::findNode(const VoxelKey& key) const {
  const auto it = nodes_.find(key);
  return it == nodes_.end() ? nullptr : &it->second;
}

std::vector<VoxelKey> OccupancyOctree::sortedKeys() const {
  std::vector<VoxelKey> keys;
  keys.reserve(nodes_.size());
  for (const auto& [key, node] : nodes_) {
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace mmot
