#ifndef MMOT_RAY_TRAVERSAL_HPP
#define MMOT_RAY_TRAVERSAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <vector>

#include "mmot/errors.hpp"
#include "mmot/geometry.hpp"
#include "mmot/voxel_key.hpp"

namespace mmot {

/// Walks the voxels intersected by the segment [origin, endpoint) in order
/// from the origin, excluding the voxel containing the endpoint, and calls
/// visit(key) for each. Incremental grid traversal: at every step the axis
/// with the nearest upcoming boundary plane advances by one voxel, so
/// consecutive keys are face-adjacent; exact ties advance x before y before
/// z. Addressing follows the floor convention, so a point on a boundary
/// plane belongs to the higher-index voxel.
/// Throws InvalidInputError for non-finite or zero-length rays.
template <typename Visitor>
void traverseRay(const Point3& origin, const Point3& endpoint, double resolution,
                 Visitor&& visit) {
  if (!origin.isFinite() || !endpoint.isFinite()) {
    throw InvalidInputError("ray endpoints must be finite");
  }
  if (origin == endpoint) {
    throw InvalidInputError("ray must have nonzero length");
  }

  VoxelKey current = keyForPoint(origin, resolution);
  const VoxelKey end = keyForPoint(endpoint, resolution);
  if (current == end) {
    return;
  }

  const double d[3] = {endpoint.x - origin.x, endpoint.y - origin.y,
                       endpoint.z - origin.z};
  const double o[3] = {origin.x, origin.y, origin.z};
  std::int32_t* const idx[3] = {&current.i, &current.j, &current.k};
  const std::int32_t end_idx[3] = {end.i, end.j, end.k};

  std::int32_t step[3];
  std::int64_t remaining[3];
  double t_max[3];
  double t_delta[3];
  for (int a = 0; a < 3; ++a) {
    remaining[a] = std::abs(static_cast<std::int64_t>(end_idx[a]) - *idx[a]);
    if (d[a] > 0.0) {
      step[a] = 1;
      t_delta[a] = resolution / d[a];
      t_max[a] = std::max(((*idx[a] + 1) * resolution - o[a]) / d[a], 0.0);
    } else if (d[a] < 0.0) {
      step[a] = -1;
      t_delta[a] = -resolution / d[a];
      t_max[a] = std::max((*idx[a] * resolution - o[a]) / d[a], 0.0);
    } else {
      step[a] = 0;
      t_delta[a] = std::numeric_limits<double>::infinity();
      t_max[a] = std::numeric_limits<double>::infinity();
    }
  }

  visit(current);
  while (true) {
    // Axes that already reached the endpoint's index are exhausted; this
    // keeps roundoff in the crossing parameters from ever walking past the
    // endpoint voxel and bounds the loop by the Manhattan key distance.
    int axis = -1;
    for (int a = 0; a < 3; ++a) {
      if (remaining[a] > 0 && (axis < 0 || t_max[a] < t_max[axis])) {
        axis = a;
      }
    }
    *idx[axis] += step[axis];
    t_max[axis] += t_delta[axis];
    --remaining[axis];
    if (current == end) {
      return;
    }
    visit(current);
  }
}

/// Vector-returning convenience form of the visitor-based traversal.
inline std::vector<VoxelKey> traverseRay(const Point3& origin,
                                         const Point3& endpoint,
                                         double resolution) {
  std::vector<VoxelKey> keys;
  traverseRay(origin, endpoint, resolution,
              [&keys](const VoxelKey& key) { keys.push_back(key); });
  return keys;
}

}  // namespace mmot

#endif  // MMOT_RAY_TRAVERSAL_HPP
