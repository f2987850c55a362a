#include "mmot/trajectory.hpp"

#include <cmath>

#include "mmot/errors.hpp"

namespace mmot {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double Trajectory::period() const { return kTwoPi * radius / speed; }

void validateTrajectory(const Trajectory& traj) {
  if (!traj.center.isFinite()) {
    throw InvalidInputError("trajectory center must be finite");
  }
  if (!(traj.radius > 0.0) || !std::isfinite(traj.radius)) {
    throw InvalidInputError("trajectory radius must be positive and finite");
  }
  if (!(traj.speed > 0.0) || !std::isfinite(traj.speed)) {
    throw InvalidInputError("trajectory speed must be positive and finite");
  }
  if (!(traj.duration > 0.0) || !std::isfinite(traj.duration)) {
    throw InvalidInputError("trajectory duration must be positive and finite");
  }
}

Pose endEffectorPose(const Trajectory& traj, double t) {
  validateTrajectory(traj);
  if (!(t >= 0.0) || !(t <= traj.duration)) {
    throw DomainError("time outside [0, duration]");
  }
  const double theta = traj.angularRate() * t;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Vec3 radial = traj.plane * Vec3{c, s, 0.0};
  const Vec3 tangent = traj.plane * Vec3{-s, c, 0.0};
  const Vec3 y = tangent.cross(radial);
  return Pose(traj.center + traj.radius * radial,
              Rotation3::fromColumns(radial, y, tangent));
}

}  // namespace mmot
