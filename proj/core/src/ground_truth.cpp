#include "mmot/ground_truth.hpp"

#include <algorithm>
#include <cmath>

#include "mmot/errors.hpp"

namespace mmot {
namespace {

constexpr int kMaxSubdivisionDepth = 7;
constexpr double kHalfDiagonal = 1.7320508075688772;  // sqrt(3) * half

// Proves that the union distance goes strictly negative somewhere in the
// closed cube around `center`. Unprovable within the depth budget counts as
// "no solid material" (thinner than ~r/2^7 never registers).
bool minBelowZero(const Scene& scene, const Point3& center, double half,
                  int depth) {
  const double v = scene.signedDistance(center);
  if (v < 0.0) {
    return true;
  }
  if (v >= half * kHalfDiagonal) {
    return false;
  }
  if (depth == 0) {
    return false;
  }
  const double q = 0.5 * half;
  for (int child = 0; child < 8; ++child) {
    const Point3 c{center.x + ((child & 1) ? q : -q),
                   center.y + ((child & 2) ? q : -q),
                   center.z + ((child & 4) ? q : -q)};
    if (minBelowZero(scene, c, q, depth - 1)) {
      return true;
    }
  }
  return false;
}

// Proves that the whole closed cube is strictly inside the solid.
// Unprovable counts as "touches the surface", keeping the voxel in the
// shell rather than the interior.
bool maxBelowZero(const Scene& scene, const Point3& center, double half,
                  int depth) {
  const double v = scene.signedDistance(center);
  if (v >= 0.0) {
    return false;
  }
  if (v + half * kHalfDiagonal < 0.0) {
    return true;
  }
  if (depth == 0) {
    return false;
  }
  const double q = 0.5 * half;
  for (int child = 0; child < 8; ++child) {
    const Point3 c{center.x + ((child & 1) ? q : -q),
                   center.y + ((child & 2) ? q : -q),
                   center.z + ((child & 4) ? q : -q)};
    if (!maxBelowZero(scene, c, q, depth - 1)) {
      return false;
    }
  }
  return true;
}

struct IndexRange {
  int lo;
  int hi;  // inclusive
};

IndexRange workspaceRange(double lo, double hi, double resolution) {
  IndexRange range;
  range.lo = static_cast<int>(std::ceil(lo / resolution - 1e-9));
  range.hi = static_cast<int>(std::floor(hi / resolution + 1e-9)) - 1;
  return range;
}

void requireAddressable(const IndexRange& range) {
  if (range.lo < -kMaxVoxelIndex || range.hi > kMaxVoxelIndex) {
    throw AddressingError("workspace exceeds the addressable voxel extent");
  }
}

}  // namespace

bool voxelInWorkspace(const VoxelKey& key, double resolution,
                      const Aabb& workspace) {
  const Point3 lo = voxelMinCorner(key, resolution);
  const Point3 hi{lo.x + resolution, lo.y + resolution, lo.z + resolution};
  return workspace.contains(lo, 1e-9) && workspace.contains(hi, 1e-9);
}

GroundTruthMap buildGroundTruth(const Scene& scene, double resolution,
                                const std::vector<Point3>& viewpoints) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw InvalidInputError("resolution must be positive and finite");
  }
  if (viewpoints.empty()) {
    throw InvalidInputError("ground truth needs at least one viewpoint");
  }
  for (const Point3& vp : viewpoints) {
    if (!vp.isFinite()) {
      throw InvalidInputError("viewpoints must be finite");
    }
  }

  GroundTruthMap gt;
  gt.resolution = resolution;
  gt.workspace = scene.workspace();

  const IndexRange wx =
      workspaceRange(gt.workspace.min.x, gt.workspace.max.x, resolution);
  const IndexRange wy =
      workspaceRange(gt.workspace.min.y, gt.workspace.max.y, resolution);
  const IndexRange wz =
      workspaceRange(gt.workspace.min.z, gt.workspace.max.z, resolution);
  requireAddressable(wx);
  requireAddressable(wy);
  requireAddressable(wz);

  VoxelKeySet candidates;
  for (const Primitive& primitive : scene.primitives()) {
    const Aabb bounds = primitive.worldBounds();
    const int x0 = std::max(
        wx.lo, static_cast<int>(std::floor(bounds.min.x / resolution)) - 1);
    const int x1 = std::min(
        wx.hi, static_cast<int>(std::floor(bounds.max.x / resolution)) + 1);
    const int y0 = std::max(
        wy.lo, static_cast<int>(std::floor(bounds.min.y / resolution)) - 1);
    const int y1 = std::min(
        wy.hi, static_cast<int>(std::floor(bounds.max.y / resolution)) + 1);
    const int z0 = std::max(
        wz.lo, static_cast<int>(std::floor(bounds.min.z / resolution)) - 1);
    const int z1 = std::min(
        wz.hi, static_cast<int>(std::floor(bounds.max.z / resolution)) + 1);
    for (int i = x0; i <= x1; ++i) {
      for (int j = y0; j <= y1; ++j) {
        for (int k = z0; k <= z1; ++k) {
          candidates.insert(VoxelKey{i, j, k});
        }
      }
    }
  }

  const double half = 0.5 * resolution;
  for (const VoxelKey& key : candidates) {
    const Point3 center = voxelCenter(key, resolution);
    if (!minBelowZero(scene, center, half, kMaxSubdivisionDepth)) {
      continue;
    }
    if (maxBelowZero(scene, center, half, kMaxSubdivisionDepth)) {
      gt.interior.insert(key);
    } else {
      gt.occupied.insert(key);
    }
  }

  for (int i = wx.lo; i <= wx.hi; ++i) {
    for (int j = wy.lo; j <= wy.hi; ++j) {
      for (int k = wz.lo; k <= wz.hi; ++k) {
        const VoxelKey key{i, j, k};
        if (gt.occupied.contains(key) || gt.interior.contains(key)) {
          continue;
        }
        const Point3 center = voxelCenter(key, resolution);
        for (const Point3& vp : viewpoints) {
          const Vec3 to_center = center - vp;
          const double dist = to_center.norm();
          if (dist < 1e-12) {
            gt.known_free.insert(key);
            break;
          }
          const Vec3 dir = (1.0 / dist) * to_center;
          if (!scene.castRay(vp, dir, dist)) {
            gt.known_free.insert(key);
            break;
          }
        }
      }
    }
  }

  return gt;
}

OccupancyOctree groundTruthToOctree(const GroundTruthMap& gt) {
  OccupancyOctree map(gt.resolution);
  for (const VoxelKey& key : gt.occupied) {
    map.applyUpdate(key, map.clampMax());
  }
  for (const VoxelKey& key : gt.known_free) {
    map.applyUpdate(key, map.clampMin());
  }
  for (const VoxelKey& key : gt.interior) {
    map.applyUpdate(key, 0.0);
  }
  return map;
}

GroundTruthMap groundTruthFromOctree(const OccupancyOctree& map,
                                     const Aabb* workspace_override) {
  GroundTruthMap gt;
  gt.resolution = map.resolution();
  Point3 lo{0.0, 0.0, 0.0};
  Point3 hi{0.0, 0.0, 0.0};
  bool first = true;
  for (const auto& [key, node] : map.nodes()) {
    if (node.log_odds > 0.0) {
      gt.occupied.insert(key);
    } else if (node.log_odds < 0.0) {
      gt.known_free.insert(key);
    } else {
      gt.interior.insert(key);
    }
    const Point3 corner = voxelMinCorner(key, gt.resolution);
    if (first) {
      lo = corner;
      hi = corner;
      first = false;
    } else {
      lo = {std::min(lo.x, corner.x), std::min(lo.y, corner.y),
            std::min(lo.z, corner.z)};
      hi = {std::max(hi.x, corner.x), std::max(hi.y, corner.y),
            std::max(hi.z, corner.z)};
    }
  }
  if (workspace_override != nullptr) {
    gt.workspace = *workspace_override;
  } else {
    gt.workspace = Aabb{lo, {hi.x + gt.resolution, hi.y + gt.resolution,
                             hi.z + gt.resolution}};
  }
  return gt;
}

}  // namespace mmot
