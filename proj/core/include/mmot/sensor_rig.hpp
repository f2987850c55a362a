#ifndef MMOT_SENSOR_RIG_HPP
#define MMOT_SENSOR_RIG_HPP

#include <vector>

#include "mmot/geometry.hpp"

namespace mmot {

/// One proximity sensor fixed to the end effector. The beam leaves the mount
/// origin along the mount's local z-axis.
struct ProximityMount {
  int sensor_id = 1;
  Pose pose;

  bool operator==(const ProximityMount&) const = default;
};

/// The full sensor suite: proximity mounts riding the end effector plus one
/// depth camera fixed in the world, with their noise levels, rates, and the
/// camera's pinhole ray grid.
struct SensorRig {
  std::vector<ProximityMount> proximity_mounts;
  Pose camera_pose;
  double sigma_prox = 0.02;
  double sigma_depth = 0.03;
  double proximity_hz = 30.0;
  double depth_hz = 10.0;
  int depth_width = 80;
  int depth_height = 60;
  double depth_fov_x = 1.2322024519079966;  // 70.6 degrees
  double depth_fov_y = 1.0471975511965976;  // 60 degrees

  bool operator==(const SensorRig&) const = default;
};

/// Throws InvalidInputError for non-positive rates, negative or non-finite
/// noise, a proximity rate below the depth rate, an empty or duplicate-id
/// mount list, ids below 1, or a degenerate camera grid.
void validateSensorRig(const SensorRig& rig);

/// Number of proximity ticks per depth frame (proximity_hz / depth_hz,
/// rounded); frames are rendered on ticks divisible by this.
int depthTickStride(const SensorRig& rig);

/// Default layout: two rings of 17 mounts each around the end-effector
/// z-axis at axial offsets of +/-0.03, ring radius 0.05, the second ring
/// rotated half a slot; every beam points radially outward. Ids 1..34.
std::vector<ProximityMount> defaultProximityMounts();

/// Camera pose looking from `eye` toward `target` in the depth-image
/// convention: local z forward, x right, y down. Uses world +z as the up
/// reference (falls back to world +y when the view is vertical).
/// Throws InvalidInputError when eye and target coincide.
Pose cameraLookAt(const Point3& eye, const Point3& target);

/// Camera-frame unit direction of every pixel ray, row-major with index
/// v * depth_width + u; pixel (0, 0) is the top-left corner of the image.
std::vector<Vec3> depthRayDirections(const SensorRig& rig);

}  // namespace mmot

#endif  // MMOT_SENSOR_RIG_HPP
