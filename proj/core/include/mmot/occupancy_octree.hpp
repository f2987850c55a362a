#ifndef MMOT_OCCUPANCY_OCTREE_HPP
#define MMOT_OCCUPANCY_OCTREE_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mmot/geometry.hpp"
#include "mmot/voxel_key.hpp"

namespace mmot {

enum class OccupancyState { kUnknown, kFree, kOccupied };

struct OccupancyNode {
  double log_odds = 0.0;
  std::int64_t last_update_tick = -1;

  bool operator==(const OccupancyNode&) const = default;
};

/// Sparse leaf-level occupancy map. Keys absent from the store are unknown
/// space; stored nodes carry clamped log-odds. The store is flat (keyed by
/// VoxelKey) rather than a pointer-based 8-ary tree: observable semantics at
/// the leaf resolution are identical and queries stay O(1).
class OccupancyOctree {
 public:
  static constexpr double kDefaultResolution = 0.04;
  static constexpr double kDefaultClampMin = -2.0;
  static constexpr double kDefaultClampMax = 3.5;
  static constexpr double kDefaultOccupancyThreshold = 0.0;

  explicit OccupancyOctree(double resolution = kDefaultResolution,
                           double clamp_min = kDefaultClampMin,
                           double clamp_max = kDefaultClampMax,
                           double occupancy_threshold = kDefaultOccupancyThreshold);

  double resolution() const { return resolution_; }
  double clampMin() const { return clamp_min_; }
  double clampMax() const { return clamp_max_; }
  double occupancyThreshold() const { return occupancy_threshold_; }

  VoxelKey keyForPoint(const Point3& p) const {
    return mmot::keyForPoint(p, resolution_);
  }

  /// Adds delta to the node's log-odds and clamps into [clampMin, clampMax].
  /// A node absent before the call starts from the prior log-odds 0
  /// (P = 0.5). Returns the clamped post-update value.
  /// Throws InvalidInputError for non-finite deltas.
  double applyUpdate(const VoxelKey& key, double delta,
                     std::int64_t tick = -1);

  /// Tri-state query: absent -> unknown, log-odds above the threshold ->
  /// occupied, at or below -> free.
  OccupancyState occupancyState(const VoxelKey& key) const;

  /// Occupancy probability of the voxel; absent keys report the prior 0.5.
  double probability(const VoxelKey& key) const;

  const OccupancyNode* findNode(const VoxelKey& key) const;

  std::size_t nodeCount() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Keys in ascending (i, j, k) lexicographic order, for deterministic
  /// iteration and serialization.
  std::vector<VoxelKey> sortedKeys() const;

  const std::unordered_map<VoxelKey, OccupancyNode, VoxelKeyHash>& nodes() const {
    return nodes_;
  }

  bool operator==(const OccupancyOctree&) const = default;

 private:
  double resolution_;
  double clamp_min_;
  double clamp_max_;
  double occupancy_threshold_;
  std::unordered_map<VoxelKey, OccupancyNode, VoxelKeyHash> nodes_;
};

}  // namespace mmot

#endif  // MMOT_OCCUPANCY_OCTREE_HPP
