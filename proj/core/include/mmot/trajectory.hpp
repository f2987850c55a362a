#ifndef MMOT_TRAJECTORY_HPP
#define MMOT_TRAJECTORY_HPP

#include "mmot/geometry.hpp"

namespace mmot {

/// Circular end-effector path. The circle lives in the plane spanned by the
/// first two columns of `plane`, centered at `center`; phase zero sits at
/// center + radius * (plane x-axis) and advances at speed / radius rad/s.
struct Trajectory {
  Point3 center;
  double radius = 0.3;
  double speed = 0.188;
  Rotation3 plane = Rotation3::identity();
  double duration = 30.0;

  /// Angular rate in rad/s.
  double angularRate() const { return speed / radius; }
  /// Time of one full revolution in seconds.
  double period() const;

  bool operator==(const Trajectory&) const = default;
};

/// Throws InvalidInputError when radius, speed, or duration is not positive
/// and finite.
void validateTrajectory(const Trajectory& traj);

/// Pose at time t: position on the circle, local z along the instantaneous
/// direction of travel, local x pointing radially outward, y = z cross x.
/// Throws DomainError when t is outside [0, duration].
Pose endEffectorPose(const Trajectory& traj, double t);

}  // namespace mmot

#endif  // MMOT_TRAJECTORY_HPP
