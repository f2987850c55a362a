#ifndef MMOT_SCENE_HPP
#define MMOT_SCENE_HPP

#include <optional>
#include <string>
#include <vector>

#include "mmot/geometry.hpp"

namespace mmot {

struct Aabb {
  Point3 min;
  Point3 max;

  bool contains(const Point3& p, double tol = 0.0) const {
    return p.x >= min.x - tol && p.x <= max.x + tol && p.y >= min.y - tol &&
           p.y <= max.y + tol && p.z >= min.z - tol && p.z <= max.z + tol;
  }

  bool operator==(const Aabb&) const = default;
};

enum class ShapeKind { kBox, kCylinder, kCone, kSlab };

/// Solid analytic shape posed in the world. Local conventions: boxes and
/// slabs are centered with full extents (ex, ey, ez); cylinders are centered
/// with their axis along local z (radius, height); cones have their base
/// disk at local z = -height/2 and apex at +height/2 (base_radius, height).
/// A slab is geometrically a box; the separate kind marks flat panels like
/// table tops and shelf walls in scenario files.
class Primitive {
 public:
  static Primitive box(const Pose& pose, const Vec3& extents,
                       std::string label = {});
  static Primitive slab(const Pose& pose, const Vec3& extents,
                        std::string label = {});
  static Primitive cylinder(const Pose& pose, double radius, double height,
                            std::string label = {});
  static Primitive cone(const Pose& pose, double base_radius, double height,
                        std::string label = {});

  ShapeKind shape() const { return shape_; }
  const Pose& pose() const { return pose_; }
  const std::string& label() const { return label_; }

  /// Full extents for boxes and slabs; throws InvalidInputError otherwise.
  const Vec3& extents() const;
  /// Cylinder radius or cone base radius; throws for boxes and slabs.
  double radius() const;
  /// Cylinder or cone height; throws for boxes and slabs.
  double height() const;

  /// Exact signed Euclidean distance to the solid: negative inside,
  /// positive outside, zero on the surface.
  double signedDistance(const Point3& world_point) const;

  /// Nearest strictly positive distance along the ray to the surface, or
  /// nullopt. Rays starting inside hit the surface on the way out.
  /// `unit_direction` must be unit length within 1e-9.
  std::optional<double> raycast(const Point3& origin,
                                const Vec3& unit_direction) const;

  /// Conservative world-frame bounding box.
  Aabb worldBounds() const;

 private:
  Primitive(ShapeKind shape, const Pose& pose, const Vec3& dims,
            std::string label);

  ShapeKind shape_;
  Pose pose_;
  Vec3 dims_;  // box/slab: full extents; cylinder/cone: (radius, radius, height)
  std::string label_;
};

/// Immutable set of primitives inside a workspace box. The solid occupied
/// region is the union of the primitives; signedDistance is the exact
/// union distance (minimum over members).
class Scene {
 public:
  Scene() = default;

  /// Throws InvalidInputError when the workspace is inverted or a
  /// primitive's bounds poke outside the workspace by more than 1e-9.
  Scene(std::vector<Primitive> primitives, const Aabb& workspace);

  const std::vector<Primitive>& primitives() const { return primitives_; }
  const Aabb& workspace() const { return workspace_; }

  /// +infinity for an empty scene.
  double signedDistance(const Point3& world_point) const;

  /// Nearest surface hit across all primitives within max_range, or
  /// nullopt. Throws InvalidInputError for non-unit directions.
  std::optional<double> castRay(const Point3& origin,
                                const Vec3& unit_direction,
                                double max_range) const;

 private:
  std::vector<Primitive> primitives_;
  Aabb workspace_{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}};
};

}  // namespace mmot

#endif  // MMOT_SCENE_HPP
