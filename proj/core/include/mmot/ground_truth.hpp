#ifndef MMOT_GROUND_TRUTH_HPP
#define MMOT_GROUND_TRUTH_HPP

#include <unordered_set>
#include <vector>

#include "mmot/occupancy_octree.hpp"
#include "mmot/scene.hpp"
#include "mmot/voxel_key.hpp"

namespace mmot {

using VoxelKeySet = std::unordered_set<VoxelKey, VoxelKeyHash>;

/// Analytic reference map at a fixed resolution. `occupied` holds the
/// surface-shell voxels of the scene solids; `interior` holds voxels fully
/// inside a solid, which no scan could ever observe and which stay out of
/// every comparison category; `known_free` holds workspace voxels with an
/// unobstructed line of sight from at least one virtual viewpoint. The three
/// sets are disjoint and lie within the workspace.
struct GroundTruthMap {
  VoxelKeySet occupied;
  VoxelKeySet known_free;
  VoxelKeySet interior;
  double resolution = 0.04;
  Aabb workspace;
};

/// Whether the voxel's full cube lies inside the bounds (1e-9 slack).
bool voxelInWorkspace(const VoxelKey& key, double resolution,
                      const Aabb& workspace);

/// Voxelizes the scene against its own workspace bounds. A voxel is
/// occupied when its cube provably contains solid material but is not
/// provably submerged in it (the one-voxel-thick shell around each solid);
/// classification recursively subdivides the cube and bounds the union
/// signed distance via its Lipschitz constant. Free space is labeled by
/// casting a ray from each viewpoint to the voxel center.
/// Throws InvalidInputError for a bad resolution or no viewpoints.
GroundTruthMap buildGroundTruth(const Scene& scene, double resolution,
                                const std::vector<Point3>& viewpoints);

/// Encodes the reference as an octree for file exchange: occupied voxels at
/// the clamp maximum, known-free at the clamp minimum, interior exactly at
/// the prior 0.
OccupancyOctree groundTruthToOctree(const GroundTruthMap& gt);

/// Inverts groundTruthToOctree: positive log-odds become occupied, negative
/// known-free, exact zero interior. The workspace defaults to the bounding
/// box of the stored voxels when no override is given.
GroundTruthMap groundTruthFromOctree(const OccupancyOctree& map,
                                     const Aabb* workspace_override = nullptr);

}  // namespace mmot

#endif  // MMOT_GROUND_TRUTH_HPP
