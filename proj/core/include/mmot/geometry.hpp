#ifndef MMOT_GEOMETRY_HPP
#define MMOT_GEOMETRY_HPP

#include <array>
#include <cmath>

namespace mmot {

/// 3-D vector / point in meters, world or local frame depending on context.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const {
    return {x + o.x, y + o.y, z + o.z};
  }
  constexpr Vec3 operator-(const Vec3& o) const {
    return {x - o.x, y - o.y, z - o.z};
  }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }

  constexpr double dot(const Vec3& o) const {
    return x * o.x + y * o.y + z * o.z;
  }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }

  Vec3 normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }

  bool isFinite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  bool operator==(const Vec3&) const = default;
};

using Point3 = Vec3;

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Rotation as an explicit 3x3 direction-cosine matrix, row-major.
/// Construction validates orthonormality and det = +1 to 1e-9; inputs that
/// fail validation are rejected rather than re-orthogonalized.
class Rotation3 {
 public:
  Rotation3();  // identity

  /// Row-major entries m[row][col].
  explicit Rotation3(const std::array<double, 9>& row_major);

  /// Builds the matrix whose columns are the given frame axes expressed in
  /// the parent frame. Validates like the array constructor.
  static Rotation3 fromColumns(const Vec3& x_axis, const Vec3& y_axis,
                               const Vec3& z_axis);

  static Rotation3 identity() { return Rotation3(); }

  /// Rotation about an arbitrary axis (normalized internally) by angle in
  /// radians, Rodrigues form.
  static Rotation3 fromAxisAngle(const Vec3& axis, double angle_rad);

  /// Z-Y-X convention: R = Rz(yaw) * Ry(pitch) * Rx(roll), angles in radians.
  static Rotation3 fromYawPitchRoll(double yaw, double pitch, double roll);

  Vec3 operator*(const Vec3& v) const {
    return {m_[0] * v.x + m_[1] * v.y + m_[2] * v.z,
            m_[3] * v.x + m_[4] * v.y + m_[5] * v.z,
            m_[6] * v.x + m_[7] * v.y + m_[8] * v.z};
  }

  Rotation3 operator*(const Rotation3& o) const;

  /// Inverse rotation (transpose).
  Rotation3 transposed() const;

  /// Column k as a vector (the image of the k-th basis axis).
  Vec3 column(int k) const { return {m_[k], m_[3 + k], m_[6 + k]}; }

  double at(int row, int col) const { return m_[3 * row + col]; }
  const std::array<double, 9>& rowMajor() const { return m_; }

  bool operator==(const Rotation3&) const = default;

 private:
  struct Unchecked {};
  Rotation3(const std::array<double, 9>& row_major, Unchecked) : m_(row_major) {}

  std::array<double, 9> m_;
};

/// Rigid transform: world = rotation * local + translation.
struct Pose {
  Vec3 translation;
  Rotation3 rotation;

  Pose() = default;
  Pose(const Vec3& t, const Rotation3& r) : translation(t), rotation(r) {}

  static Pose identity() { return Pose(); }

  Vec3 transform(const Vec3& local) const {
    return translation + rotation * local;
  }

  /// Composition: (*this) applied after mapping through `local`.
  Pose compose(const Pose& local) const {
    return Pose(transform(local.translation), rotation * local.rotation);
  }

  bool operator==(const Pose&) const = default;
};

/// Position of an object sensed along a proximity sensor's local z-axis at
/// the given distance, expressed in the world frame.
/// Throws InvalidInputError for negative or non-finite distances.
Point3 proximityObjectPosition(const Pose& sensor_pose, double distance);

/// World-frame position of a camera-frame depth return.
/// Throws InvalidInputError for non-finite components.
Point3 depthObjectPosition(const Pose& camera_pose, const Point3& point_in_camera);

}  // namespace mmot

#endif  // MMOT_GEOMETRY_HPP
