#include "mmot/sensor_rig.hpp"

#include <cmath>
#include <unordered_set>

#include "mmot/errors.hpp"

namespace mmot {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validateSensorRig(const SensorRig& rig) {
  if (rig.proximity_mounts.empty()) {
    throw InvalidInputError("rig needs at least one proximity mount");
  }
  std::unordered_set<int> ids;
  for (const ProximityMount& mount : rig.proximity_mounts) {
    if (mount.sensor_id < 1) {
      throw InvalidInputError("proximity sensor ids start at 1");
    }
    if (!ids.insert(mount.sensor_id).second) {
      throw InvalidInputError("duplicate proximity sensor id " +
                              std::to_string(mount.sensor_id));
    }
  }
  if (!(rig.sigma_prox >= 0.0) || !std::isfinite(rig.sigma_prox) ||
      !(rig.sigma_depth >= 0.0) || !std::isfinite(rig.sigma_depth)) {
    throw InvalidInputError("noise levels must be non-negative and finite");
  }
  if (!(rig.proximity_hz > 0.0) || !std::isfinite(rig.proximity_hz) ||
      !(rig.depth_hz > 0.0) || !std::isfinite(rig.depth_hz)) {
    throw InvalidInputError("sensor rates must be positive and finite");
  }
  if (rig.proximity_hz + 1e-9 < rig.depth_hz) {
    throw InvalidInputError(
        "the proximity rate must be at least the depth rate");
  }
  if (rig.depth_width < 1 || rig.depth_height < 1) {
    throw InvalidInputError("depth grid must be at least 1x1");
  }
  if (!(rig.depth_fov_x > 0.0) || !(rig.depth_fov_x < kPi) ||
      !(rig.depth_fov_y > 0.0) || !(rig.depth_fov_y < kPi)) {
    throw InvalidInputError("fields of view must lie in (0, pi)");
  }
}

int depthTickStride(const SensorRig& rig) {
  return static_cast<int>(std::lround(rig.proximity_hz / rig.depth_hz));
}

std::vector<ProximityMount> defaultProximityMounts() {
  constexpr int kPerRing = 17;
  constexpr double kRingRadius = 0.05;
  constexpr double kAxialOffset = 0.03;
  std::vector<ProximityMount> mounts;
  mounts.reserve(2 * kPerRing);
  int id = 1;
  for (int ring = 0; ring < 2; ++ring) {
    const double z = ring == 0 ? -kAxialOffset : kAxialOffset;
    const double stagger = ring == 0 ? 0.0 : kPi / kPerRing;
    for (int slot = 0; slot < kPerRing; ++slot) {
      const double phi = stagger + 2.0 * kPi * slot / kPerRing;
      const double c = std::cos(phi);
      const double s = std::sin(phi);
      // Beam (local z) points radially outward; local y is the mount axis.
      const Rotation3 rot = Rotation3::fromColumns({-s, c, 0.0}, {0.0, 0.0, 1.0},
                                                   {c, s, 0.0});
      mounts.push_back(
          {id++, Pose({kRingRadius * c, kRingRadius * s, z}, rot)});
    }
  }
  return mounts;
}

Pose cameraLookAt(const Point3& eye, const Point3& target) {
  if (!eye.isFinite() || !target.isFinite()) {
    throw InvalidInputError("camera eye and target must be finite");
  }
  const Vec3 to_target = target - eye;
  const double dist = to_target.norm();
  if (dist < 1e-12) {
    throw InvalidInputError("camera eye and target coincide");
  }
  const Vec3 forward = (1.0 / dist) * to_target;
  Vec3 up{0.0, 0.0, 1.0};
  if (std::abs(forward.dot(up)) > 1.0 - 1e-9) {
    up = {0.0, 1.0, 0.0};
  }
  const Vec3 right = forward.cross(up).normalized();
  const Vec3 down = forward.cross(right);
  return Pose(eye, Rotation3::fromColumns(right, down, forward));
}

std::vector<Vec3> depthRayDirections(const SensorRig& rig) {
  validateSensorRig(rig);
  const double tan_x = std::tan(0.5 * rig.depth_fov_x);
  const double tan_y = std::tan(0.5 * rig.depth_fov_y);
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<std::size_t>(rig.depth_width) * rig.depth_height);
  for (int v = 0; v < rig.depth_height; ++v) {
    const double ny = (2.0 * (v + 0.5) / rig.depth_height - 1.0) * tan_y;
    for (int u = 0; u < rig.depth_width; ++u) {
      const double nx = (2.0 * (u + 0.5) / rig.depth_width - 1.0) * tan_x;
      dirs.push_back(Vec3{nx, ny, 1.0}.normalized());
    }
  }
  return dirs;
}

}  // namespace mmot
