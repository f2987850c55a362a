#include "mmot/geometry.hpp"

#include <cmath>

#include "mmot/errors.hpp"

namespace mmot {

namespace {

constexpr double kOrthoTolerance = 1e-9;

void validateRotation(const std::array<double, 9>& m) {
  for (double v : m) {
    if (!std::isfinite(v)) {
      throw InvalidInputError("rotation matrix has non-finite entries");
    }
  }
  // R^T R == I, entrywise to 1e-9.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) {
        dot += m[3 * k + i] * m[3 * k + j];
      }
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(dot - expected) > kOrthoTolerance) {
        throw InvalidInputError("rotation matrix is not orthonormal");
      }
    }
  }
  const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                     m[1] * (m[3] * m[8] - m[5] * m[6]) +
                     m[2] * (m[3] * m[7] - m[4] * m[6]);
  if (std::abs(det - 1.0) > kOrthoTolerance) {
    throw InvalidInputError("rotation matrix determinant is not +1");
  }
}

}  // namespace

Rotation3::Rotation3() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

Rotation3::Rotation3(const std::array<double, 9>& row_major) : m_(row_major) {
  validateRotation(m_);
}

Rotation3 Rotation3::fromColumns(const Vec3& x_axis, const Vec3& y_axis,
                                 const Vec3& z_axis) {
  return Rotation3({x_axis.x, y_axis.x, z_axis.x,  //
                    x_axis.y, y_axis.y, z_axis.y,  //
                    x_axis.z, y_axis.z, z_axis.z});
}

Rotation3 Rotation3::fromAxisAngle(const Vec3& axis, double angle_rad) {
  if (!axis.isFinite() || !std::isfinite(angle_rad)) {
    throw InvalidInputError("axis-angle inputs must be finite");
  }
  const double n = axis.norm();
  if (n == 0.0) {
    throw InvalidInputError("axis-angle axis must be nonzero");
  }
  const Vec3 u = axis * (1.0 / n);
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  const double t = 1.0 - c;
  return Rotation3({c + u.x * u.x * t, u.x * u.y * t - u.z * s, u.x * u.z * t + u.y * s,
                    u.y * u.x * t + u.z * s, c + u.y * u.y * t, u.y * u.z * t - u.x * s,
                    u.z * u.x * t - u.y * s, u.z * u.y * t + u.x * s, c + u.z * u.z * t});
}

Rotation3 Rotation3::fromYawPitchRoll(double yaw, double pitch, double roll) {
  const Rotation3 rz = fromAxisAngle({0, 0, 1}, yaw);
  const Rotation3 ry = fromAxisAngle({0, 1, 0}, pitch);
  const Rotation3 rx = fromAxisAngle({1, 0, 0}, roll);
  return rz * (ry * rx);
}

Rotation3 Rotation3::operator*(const Rotation3& o) const {
  std::array<double, 9> r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double sum = 0.0;
      for (int k = 0; k < 3; ++k) {
        sum += m_[3 * i + k] * o.m_[3 * k + j];
      }
      r[3 * i + j] = sum;
    }
  }
  // Product of two validated rotations stays a rotation; skip revalidation
  // so accumulated 1e-16 roundoff cannot trip the constructor.
  return Rotation3(r, Unchecked{});
}

Rotation3 Rotation3::transposed() const {
  return Rotation3({m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2], m_[5], m_[8]},
                   Unchecked{});
}

Point3 proximityObjectPosition(const Pose& sensor_pose, double distance) {
  if (!std::isfinite(distance) || distance < 0.0) {
    throw InvalidInputError("proximity distance must be finite and >= 0");
  }
  return sensor_pose.transform({0.0, 0.0, distance});
}

Point3 depthObjectPosition(const Pose& camera_pose, const Point3& point_in_camera) {
  if (!point_in_camera.isFinite()) {
    throw InvalidInputError("depth return components must be finite");
  }
  return camera_pose.transform(point_in_camera);
}

}  // namespace mmot
