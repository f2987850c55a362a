#include "mmot/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "mmot/errors.hpp"

namespace mmot {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point3 toLocal(const Pose& pose, const Point3& world) {
  return pose.rotation.transposed() * (world - pose.translation);
}

void requireUnit(const Vec3& direction) {
  const double n = direction.norm();
  if (!(std::abs(n - 1.0) <= 1e-9)) {
    throw InvalidInputError("ray direction must be a unit vector");
  }
}

double sdfBox(const Point3& p, const Vec3& half) {
  const double qx = std::abs(p.x) - half.x;
  const double qy = std::abs(p.y) - half.y;
  const double qz = std::abs(p.z) - half.z;
  const double ox = std::max(qx, 0.0);
  const double oy = std::max(qy, 0.0);
  const double oz = std::max(qz, 0.0);
  const double outside = std::sqrt(ox * ox + oy * oy + oz * oz);
  const double inside = std::min(std::max({qx, qy, qz}), 0.0);
  return outside + inside;
}

double sdfCylinder(const Point3& p, double radius, double half_height) {
  const double dr = std::hypot(p.x, p.y) - radius;
  const double dz = std::abs(p.z) - half_height;
  const double or_ = std::max(dr, 0.0);
  const double oz = std::max(dz, 0.0);
  return std::sqrt(or_ * or_ + oz * oz) + std::min(std::max(dr, dz), 0.0);
}

// Exact distance to a solid cone with base radius r1 at z = -h and apex at
// z = +h, computed in the (radial, z) half-plane against the trapezoid
// cross-section (degenerate top radius zero).
double sdfCone(const Point3& p, double r1, double half_height) {
  const double h = half_height;
  const double qx = std::hypot(p.x, p.y);
  const double qy = p.z;
  const double k2x = -r1;
  const double k2y = 2.0 * h;
  const double cax = qx - std::min(qx, qy < 0.0 ? r1 : 0.0);
  const double cay = std::abs(qy) - h;
  const double k2sq = k2x * k2x + k2y * k2y;
  const double lambda =
      std::clamp(((0.0 - qx) * k2x + (h - qy) * k2y) / k2sq, 0.0, 1.0);
  const double cbx = qx - 0.0 + k2x * lambda;
  const double cby = qy - h + k2y * lambda;
  const double s = (cbx < 0.0 && cay < 0.0) ? -1.0 : 1.0;
  const double d2 =
      std::min(cax * cax + cay * cay, cbx * cbx + cby * cby);
  return s * std::sqrt(d2);
}

// Smallest positive root of a*t^2 + 2b*t + c = 0 that satisfies `accept`,
// using the cancellation-stable split q = -(b + sign(b)*sqrt(disc)).
template <typename Accept>
double bestQuadraticRoot(double a, double b, double c, Accept&& accept) {
  double best = kInf;
  if (a != 0.0) {
    const double disc = b * b - a * c;
    if (disc < 0.0) {
      return best;
    }
    const double sq = std::sqrt(disc);
    const double q = -(b + std::copysign(sq, b));
    const double roots[2] = {q / a, q != 0.0 ? c / q : -b / a};
    for (double t : roots) {
      if (t > 0.0 && t < best && accept(t)) {
        best = t;
      }
    }
  } else if (b != 0.0) {
    const double t = -c / (2.0 * b);
    if (t > 0.0 && accept(t)) {
      best = t;
    }
  }
  return best;
}

double raycastBox(const Point3& o, const Vec3& d, const Vec3& half) {
  const double ov[3] = {o.x, o.y, o.z};
  const double dv[3] = {d.x, d.y, d.z};
  const double hv[3] = {half.x, half.y, half.z};
  double t_enter = -kInf;
  double t_exit = kInf;
  for (int a = 0; a < 3; ++a) {
    if (dv[a] == 0.0) {
      if (std::abs(ov[a]) > hv[a]) {
        return kInf;
      }
      continue;
    }
    const double t0 = (-hv[a] - ov[a]) / dv[a];
    const double t1 = (hv[a] - ov[a]) / dv[a];
    t_enter = std::max(t_enter, std::min(t0, t1));
    t_exit = std::min(t_exit, std::max(t0, t1));
  }
  if (t_exit < t_enter) {
    return kInf;
  }
  if (t_enter > 0.0) {
    return t_enter;
  }
  if (t_exit > 0.0) {
    return t_exit;
  }
  return kInf;
}

double raycastCylinder(const Point3& o, const Vec3& d, double radius,
                       double half_height) {
  double best = kInf;
  const double a = d.x * d.x + d.y * d.y;
  const double b = o.x * d.x + o.y * d.y;
  const double c = o.x * o.x + o.y * o.y - radius * radius;
  best = std::min(best, bestQuadraticRoot(a, b, c, [&](double t) {
                    return std::abs(o.z + t * d.z) <= half_height;
                  }));
  if (d.z != 0.0) {
    for (double zc : {-half_height, half_height}) {
      const double t = (zc - o.z) / d.z;
      if (t > 0.0 && t < best) {
        const double x = o.x + t * d.x;
        const double y = o.y + t * d.y;
        if (x * x + y * y <= radius * radius) {
          best = t;
        }
      }
    }
  }
  return best;
}

double raycastCone(const Point3& o, const Vec3& d, double base_radius,
                   double half_height) {
  double best = kInf;
  const double k = base_radius / (2.0 * half_height);
  const double w = half_height - o.z;
  const double a = d.x * d.x + d.y * d.y - k * k * d.z * d.z;
  const double b = o.x * d.x + o.y * d.y + k * k * w * d.z;
  const double c = o.x * o.x + o.y * o.y - k * k * w * w;
  best = std::min(best, bestQuadraticRoot(a, b, c, [&](double t) {
                    const double z = o.z + t * d.z;
                    return z >= -half_height && z <= half_height;
                  }));
  if (d.z != 0.0) {
    const double t = (-half_height - o.z) / d.z;
    if (t > 0.0 && t < best) {
      const double x = o.x + t * d.x;
      const double y = o.y + t * d.y;
      if (x * x + y * y <= base_radius * base_radius) {
        best = t;
      }
    }
  }
  return best;
}

Aabb axisExtentBounds(const Pose& pose, double radius, double half_height) {
  const Vec3 axis = pose.rotation.column(2);
  const double u[3] = {axis.x, axis.y, axis.z};
  double e[3];
  for (int i = 0; i < 3; ++i) {
    const double ui = std::clamp(u[i], -1.0, 1.0);
    e[i] = half_height * std::abs(ui) + radius * std::sqrt(1.0 - ui * ui);
  }
  const Vec3 extent{e[0], e[1], e[2]};
  return {pose.translation - extent, pose.translation + extent};
}

}  // namespace

Primitive::Primitive(ShapeKind shape, const Pose& pose, const Vec3& dims,
                     std::string label)
    : shape_(shape), pose_(pose), dims_(dims), label_(std::move(label)) {
  if (!dims_.isFinite() || dims_.x <= 0.0 || dims_.y <= 0.0 ||
      dims_.z <= 0.0) {
    throw InvalidInputError("primitive dimensions must be positive and finite");
  }
}

Primitive Primitive::box(const Pose& pose, const Vec3& extents,
                         std::string label) {
  return Primitive(ShapeKind::kBox, pose, extents, std::move(label));
}

Primitive Primitive::slab(const Pose& pose, const Vec3& extents,
                          std::string label) {
  return Primitive(ShapeKind::kSlab, pose, extents, std::move(label));
}

Primitive Primitive::cylinder(const Pose& pose, double radius, double height,
                              std::string label) {
  return Primitive(ShapeKind::kCylinder, pose, {radius, radius, height},
                   std::move(label));
}

Primitive Primitive::cone(const Pose& pose, double base_radius, double height,
                          std::string label) {
  return Primitive(ShapeKind::kCone, pose, {base_radius, base_radius, height},
                   std::move(label));
}

const Vec3& Primitive::extents() const {
  if (shape_ != ShapeKind::kBox && shape_ != ShapeKind::kSlab) {
    throw InvalidInputError("extents() is only defined for boxes and slabs");
  }
  return dims_;
}

double Primitive::radius() const {
  if (shape_ != ShapeKind::kCylinder && shape_ != ShapeKind::kCone) {
    throw InvalidInputError("radius() is only defined for cylinders and cones");
  }
  return dims_.x;
}

double Primitive::height() const {
  if (shape_ != ShapeKind::kCylinder && shape_ != ShapeKind::kCone) {
    throw InvalidInputError("height() is only defined for cylinders and cones");
  }
  return dims_.z;
}

double Primitive::signedDistance(const Point3& world_point) const {
  const Point3 p = toLocal(pose_, world_point);
  switch (shape_) {
    case ShapeKind::kBox:
    case ShapeKind::kSlab:
      return sdfBox(p, 0.5 * dims_);
    case ShapeKind::kCylinder:
      return sdfCylinder(p, dims_.x, 0.5 * dims_.z);
    case ShapeKind::kCone:
      return sdfCone(p, dims_.x, 0.5 * dims_.z);
  }
  throw InvalidInputError("unknown primitive shape");
}

std::optional<double> Primitive::raycast(const Point3& origin,
                                         const Vec3& unit_direction) const {
  requireUnit(unit_direction);
  const Rotation3 world_from_local = pose_.rotation;
  const Rotation3 local_from_world = world_from_local.transposed();
  const Point3 o = local_from_world * (origin - pose_.translation);
  const Vec3 d = local_from_world * unit_direction;
  double t = kInf;
  switch (shape_) {
    case ShapeKind::kBox:
    case ShapeKind::kSlab:
      t = raycastBox(o, d, 0.5 * dims_);
      break;
    case ShapeKind::kCylinder:
      t = raycastCylinder(o, d, dims_.x, 0.5 * dims_.z);
      break;
    case ShapeKind::kCone:
      t = raycastCone(o, d, dims_.x, 0.5 * dims_.z);
      break;
  }
  if (t == kInf) {
    return std::nullopt;
  }
  return t;
}

Aabb Primitive::worldBounds() const {
  switch (shape_) {
    case ShapeKind::kBox:
    case ShapeKind::kSlab: {
      const Vec3 half = 0.5 * dims_;
      Point3 lo{kInf, kInf, kInf};
      Point3 hi{-kInf, -kInf, -kInf};
      for (int corner = 0; corner < 8; ++corner) {
        const Vec3 local{(corner & 1) ? half.x : -half.x,
                         (corner & 2) ? half.y : -half.y,
                         (corner & 4) ? half.z : -half.z};
        const Point3 w = pose_.transform(local);
        lo = {std::min(lo.x, w.x), std::min(lo.y, w.y), std::min(lo.z, w.z)};
        hi = {std::max(hi.x, w.x), std::max(hi.y, w.y), std::max(hi.z, w.z)};
      }
      return {lo, hi};
    }
    case ShapeKind::kCylinder:
    case ShapeKind::kCone:
      // The cone is enclosed by its base-radius cylinder.
      return axisExtentBounds(pose_, dims_.x, 0.5 * dims_.z);
  }
  throw InvalidInputError("unknown primitive shape");
}

Scene::Scene(std::vector<Primitive> primitives, const Aabb& workspace)
    : primitives_(std::move(primitives)), workspace_(workspace) {
  if (!workspace_.min.isFinite() || !workspace_.max.isFinite() ||
      workspace_.min.x >= workspace_.max.x ||
      workspace_.min.y >= workspace_.max.y ||
      workspace_.min.z >= workspace_.max.z) {
    throw InvalidInputError("workspace bounds must be a non-empty box");
  }
  for (const Primitive& primitive : primitives_) {
    const Aabb bounds = primitive.worldBounds();
    if (!workspace_.contains(bounds.min, 1e-9) ||
        !workspace_.contains(bounds.max, 1e-9)) {
      throw InvalidInputError("primitive \"" + primitive.label() +
                              "\" extends outside the workspace");
    }
  }
}

double Scene::signedDistance(const Point3& world_point) const {
  double d = kInf;
  for (const Primitive& primitive : primitives_) {
    d = std::min(d, primitive.signedDistance(world_point));
  }
  return d;
}

std::optional<double> Scene::castRay(const Point3& origin,
                                     const Vec3& unit_direction,
                                     double max_range) const {
  if (!origin.isFinite()) {
    throw InvalidInputError("ray origin must be finite");
  }
  requireUnit(unit_direction);
  if (!(max_range > 0.0) || !std::isfinite(max_range)) {
    throw InvalidInputError("max_range must be positive and finite");
  }
  double best = kInf;
  for (const Primitive& primitive : primitives_) {
    const std::optional<double> t = primitive.raycast(origin, unit_direction);
    if (t && *t < best) {
      best = *t;
    }
  }
  if (best > max_range) {
    return std::nullopt;
  }
  return best;
}

}  // namespace mmot
