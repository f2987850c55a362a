#include "mmot/scene.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "mmot/errors.hpp"
#include "mmot/geometry.hpp"

namespace mmot {
namespace {

constexpr double kPi = 3.14159265358979323846;

Pose posed(double x, double y, double z, double yaw = 0.0, double pitch = 0.0,
           double roll = 0.0) {
  return Pose{{x, y, z}, Rotation3::fromYawPitchRoll(yaw, pitch, roll)};
}

Scene mixedScene() {
  std::vector<Primitive> primitives;
  primitives.push_back(
      Primitive::box(posed(0.3, -0.2, 0.2, 0.4, 0.2, -0.3), {0.25, 0.18, 0.3},
                     "box"));
  primitives.push_back(
      Primitive::cylinder(posed(-0.35, 0.3, 0.15, 0.0, kPi / 2.0, 0.0), 0.12,
                          0.4, "cylinder"));
  primitives.push_back(
      Primitive::cone(posed(0.1, 0.45, -0.1, 0.0, 0.0, 0.5), 0.15, 0.35,
                      "cone"));
  primitives.push_back(
      Primitive::slab(posed(0.0, 0.0, -0.45), {1.2, 1.2, 0.04}, "floor"));
  return Scene(std::move(primitives), Aabb{{-1.0, -1.0, -0.6}, {1.0, 1.0, 1.0}});
}

// Containment predicate written directly from the shape definitions, kept
// independent of the signed-distance formulas it cross-checks.
bool insidePrimitive(const Primitive& primitive, const Point3& world) {
  const Pose& pose = primitive.pose();
  const Point3 q = pose.rotation.transposed() * (world - pose.translation);
  switch (primitive.shape()) {
    case ShapeKind::kBox:
    case ShapeKind::kSlab: {
      const Vec3 h = 0.5 * primitive.extents();
      return std::abs(q.x) <= h.x && std::abs(q.y) <= h.y &&
             std::abs(q.z) <= h.z;
    }
    case ShapeKind::kCylinder:
      return std::hypot(q.x, q.y) <= primitive.radius() &&
             std::abs(q.z) <= 0.5 * primitive.height();
    case ShapeKind::kCone: {
      const double h2 = 0.5 * primitive.height();
      if (q.z < -h2 || q.z > h2) {
        return false;
      }
      const double r_at_z = primitive.radius() * (h2 - q.z) / (2.0 * h2);
      return std::hypot(q.x, q.y) <= r_at_z;
    }
  }
  return false;
}

bool insideScene(const Scene& scene, const Point3& p) {
  for (const Primitive& primitive : scene.primitives()) {
    if (insidePrimitive(primitive, p)) {
      return true;
    }
  }
  return false;
}

// Walks the ray in fixed steps and reports the first outside-to-inside sign
// change of the union distance, at the midpoint of the bracketing step.
std::optional<double> marchOracle(const Scene& scene, const Point3& origin,
                                  const Vec3& dir, double max_range,
                                  double step) {
  bool prev_inside = scene.signedDistance(origin) < 0.0;
  for (double s = step; s <= max_range; s += step) {
    const Point3 p = origin + s * dir;
    const bool inside = scene.signedDistance(p) < 0.0;
    if (inside && !prev_inside) {
      return s - 0.5 * step;
    }
    prev_inside = inside;
  }
  return std::nullopt;
}

Vec3 randomUnit(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    const Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
    const double n = v.norm();
    if (n > 1e-6) {
      return (1.0 / n) * v;
    }
  }
}

TEST(PrimitiveTest, RejectsNonPositiveDimensions) {
  EXPECT_THROW(Primitive::box(Pose::identity(), {0.0, 1.0, 1.0}),
               InvalidInputError);
  EXPECT_THROW(Primitive::box(Pose::identity(), {1.0, -0.2, 1.0}),
               InvalidInputError);
  EXPECT_THROW(Primitive::cylinder(Pose::identity(), -0.1, 1.0),
               InvalidInputError);
  EXPECT_THROW(Primitive::cone(Pose::identity(), 0.1, 0.0), InvalidInputError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Primitive::slab(Pose::identity(), {nan, 1.0, 1.0}),
               InvalidInputError);
}

TEST(PrimitiveTest, ShapeSpecificAccessors) {
  const Primitive box = Primitive::box(Pose::identity(), {1.0, 2.0, 3.0});
  EXPECT_EQ(box.extents(), (Vec3{1.0, 2.0, 3.0}));
  EXPECT_THROW(box.radius(), InvalidInputError);
  EXPECT_THROW(box.height(), InvalidInputError);

  const Primitive cone = Primitive::cone(Pose::identity(), 0.5, 1.0);
  EXPECT_DOUBLE_EQ(cone.radius(), 0.5);
  EXPECT_DOUBLE_EQ(cone.height(), 1.0);
  EXPECT_THROW(cone.extents(), InvalidInputError);
}

TEST(PrimitiveTest, BoxSignedDistanceKnownValues) {
  const Primitive box = Primitive::box(Pose::identity(), {1.0, 1.0, 1.0});
  EXPECT_NEAR(box.signedDistance({1.0, 0.0, 0.0}), 0.5, 1e-12);
  EXPECT_NEAR(box.signedDistance({1.0, 1.0, 1.0}), std::sqrt(0.75), 1e-12);
  EXPECT_NEAR(box.signedDistance({0.1, 0.0, 0.0}), -0.4, 1e-12);
  EXPECT_NEAR(box.signedDistance({0.5, 0.2, 0.0}), 0.0, 1e-12);
}

TEST(PrimitiveTest, CylinderSignedDistanceKnownValues) {
  const Primitive cyl = Primitive::cylinder(Pose::identity(), 0.5, 2.0);
  EXPECT_NEAR(cyl.signedDistance({1.0, 0.0, 0.0}), 0.5, 1e-12);
  EXPECT_NEAR(cyl.signedDistance({0.0, 0.0, 1.25}), 0.25, 1e-12);
  EXPECT_NEAR(cyl.signedDistance({0.0, 0.0, 0.0}), -0.5, 1e-12);
  EXPECT_NEAR(cyl.signedDistance({1.0, 0.0, 1.5}),
              std::hypot(0.5, 0.5), 1e-12);
}

TEST(PrimitiveTest, ConeSignedDistanceKnownValues) {
  const Primitive cone = Primitive::cone(Pose::identity(), 1.0, 2.0);
  EXPECT_NEAR(cone.signedDistance({0.0, 0.0, 1.0}), 0.0, 1e-12);
  EXPECT_NEAR(cone.signedDistance({0.0, 0.0, -1.0}), 0.0, 1e-12);
  EXPECT_NEAR(cone.signedDistance({0.0, 0.0, -1.5}), 0.5, 1e-12);
  EXPECT_NEAR(cone.signedDistance({2.0, 0.0, -1.0}), 1.0, 1e-12);
  EXPECT_NEAR(cone.signedDistance({0.0, 0.0, 0.0}), -1.0 / std::sqrt(5.0),
              1e-12);
}

TEST(PrimitiveTest, PoseMovesTheShape) {
  const Primitive box =
      Primitive::box(posed(0.0, 0.0, 2.0, kPi / 4.0), {1.0, 1.0, 1.0});
  EXPECT_NEAR(box.signedDistance({0.0, 0.0, 2.0}), -0.5, 1e-12);
  // A face center rotated by 45 degrees of yaw lands on the diagonal.
  const double d = 0.5 / std::sqrt(2.0);
  EXPECT_NEAR(box.signedDistance({d, d, 2.0}), 0.0, 1e-12);
}

TEST(PrimitiveTest, WorldBoundsOfRotatedBox) {
  const Primitive box =
      Primitive::box(posed(1.0, 2.0, 3.0, kPi / 4.0), {0.2, 0.2, 0.2});
  const Aabb b = box.worldBounds();
  const double r = 0.1 * std::sqrt(2.0);
  EXPECT_NEAR(b.min.x, 1.0 - r, 1e-12);
  EXPECT_NEAR(b.max.x, 1.0 + r, 1e-12);
  EXPECT_NEAR(b.min.y, 2.0 - r, 1e-12);
  EXPECT_NEAR(b.max.y, 2.0 + r, 1e-12);
  EXPECT_NEAR(b.min.z, 2.9, 1e-12);
  EXPECT_NEAR(b.max.z, 3.1, 1e-12);
}

TEST(PrimitiveTest, WorldBoundsOfTiltedCylinder) {
  const Primitive cyl =
      Primitive::cylinder(posed(0.0, 0.0, 0.0, 0.0, kPi / 2.0, 0.0), 0.1, 0.6);
  const Aabb b = cyl.worldBounds();
  EXPECT_NEAR(b.max.x, 0.3, 1e-9);
  EXPECT_NEAR(b.max.y, 0.1, 1e-9);
  EXPECT_NEAR(b.max.z, 0.1, 1e-9);
}

TEST(SceneTest, RayHitsBoxFaceAtKnownDistance) {
  const Scene scene({Primitive::box(posed(0.0, 0.0, 2.0), {1.0, 1.0, 1.0})},
                    Aabb{{-2.0, -2.0, -2.0}, {2.0, 2.0, 4.0}});
  const auto hit = scene.castRay({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, 4.0);
  ASSERT_TRUE(hit.has_value());
  EXPECT_NEAR(*hit, 1.5, 1e-12);
}

TEST(SceneTest, HitBeyondMaxRangeIsReportedAsMiss) {
  const Scene scene({Primitive::box(posed(0.0, 0.0, 2.0), {1.0, 1.0, 1.0})},
                    Aabb{{-2.0, -2.0, -2.0}, {2.0, 2.0, 4.0}});
  EXPECT_FALSE(scene.castRay({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, 1.0));
  EXPECT_TRUE(scene.castRay({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, 1.5));
}

TEST(SceneTest, RayStartingInsideHitsTheExitSurface) {
  const Scene scene({Primitive::box(posed(0.0, 0.0, 2.0), {1.0, 1.0, 1.0})},
                    Aabb{{-2.0, -2.0, -2.0}, {2.0, 2.0, 4.0}});
  const auto hit = scene.castRay({0.0, 0.0, 2.0}, {0.0, 0.0, 1.0}, 4.0);
  ASSERT_TRUE(hit.has_value());
  EXPECT_NEAR(*hit, 0.5, 1e-12);
}

TEST(SceneTest, CylinderCapAndLateralHits) {
  // Axis along world x, caps at x = 1.5 and x = 2.5.
  const Scene scene(
      {Primitive::cylinder(posed(2.0, 0.0, 0.0, 0.0, kPi / 2.0, 0.0), 0.3,
                           1.0)},
      Aabb{{0.0, -1.0, -1.0}, {4.0, 3.0, 1.0}});
  const auto cap = scene.castRay({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 4.0);
  ASSERT_TRUE(cap.has_value());
  EXPECT_NEAR(*cap, 1.5, 1e-12);
  const auto side = scene.castRay({2.0, 2.0, 0.0}, {0.0, -1.0, 0.0}, 4.0);
  ASSERT_TRUE(side.has_value());
  EXPECT_NEAR(*side, 1.7, 1e-12);
}

TEST(SceneTest, ConeLateralAndBaseHits) {
  const Scene scene({Primitive::cone(posed(0.0, 0.0, 0.0), 0.5, 1.0)},
                    Aabb{{-3.0, -3.0, -3.0}, {3.0, 3.0, 3.0}});
  // Radius shrinks linearly from 0.5 at z = -0.5 to 0 at z = +0.5.
  const auto lateral = scene.castRay({-2.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 4.0);
  ASSERT_TRUE(lateral.has_value());
  EXPECT_NEAR(*lateral, 1.75, 1e-12);
  const auto base = scene.castRay({0.0, 0.0, -3.0}, {0.0, 0.0, 1.0}, 4.0);
  ASSERT_TRUE(base.has_value());
  EXPECT_NEAR(*base, 2.5, 1e-12);
  const auto down = scene.castRay({0.1, 0.0, 3.0}, {0.0, 0.0, -1.0}, 4.0);
  ASSERT_TRUE(down.has_value());
  EXPECT_NEAR(*down, 2.7, 1e-12);
}

TEST(SceneTest, MirrorConeAboveApexIsNotASurface) {
  const Scene scene({Primitive::cone(posed(0.0, 0.0, 0.0), 0.5, 1.0)},
                    Aabb{{-3.0, -3.0, -3.0}, {3.0, 3.0, 3.0}});
  // This ray crosses the infinite double cone above the apex but stays clear
  // of the solid itself.
  EXPECT_FALSE(scene.castRay({-2.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, 4.0));
}

TEST(SceneTest, EmptySceneHasNoSurfaceAnywhere) {
  const Scene scene({}, Aabb{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}});
  EXPECT_EQ(scene.signedDistance({0.0, 0.0, 0.0}),
            std::numeric_limits<double>::infinity());
  EXPECT_FALSE(scene.castRay({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 10.0));
}

TEST(SceneTest, RejectsInvalidRayQueries) {
  const Scene scene = mixedScene();
  EXPECT_THROW(scene.castRay({0.0, 0.0, 0.0}, {0.0, 0.0, 0.5}, 4.0),
               InvalidInputError);
  EXPECT_THROW(scene.castRay({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, 0.0),
               InvalidInputError);
  EXPECT_THROW(scene.castRay({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, -1.0),
               InvalidInputError);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(scene.castRay({inf, 0.0, 0.0}, {0.0, 0.0, 1.0}, 4.0),
               InvalidInputError);
}

TEST(SceneTest, RejectsPrimitivesOutsideTheWorkspace) {
  std::vector<Primitive> primitives{
      Primitive::box(posed(0.95, 0.0, 0.0), {0.2, 0.2, 0.2}, "poking")};
  EXPECT_THROW(Scene(std::move(primitives),
                     Aabb{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}}),
               InvalidInputError);
  EXPECT_THROW(Scene({}, Aabb{{1.0, -1.0, -1.0}, {-1.0, 1.0, 1.0}}),
               InvalidInputError);
}

TEST(SceneTest, SignedDistanceIsLipschitz) {
  const Scene scene = mixedScene();
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> coord(-1.2, 1.2);
  for (int trial = 0; trial < 500; ++trial) {
    const Point3 p{coord(rng), coord(rng), coord(rng)};
    const Point3 q{coord(rng), coord(rng), coord(rng)};
    const double lhs = std::abs(scene.signedDistance(p) - scene.signedDistance(q));
    EXPECT_LE(lhs, (p - q).norm() + 1e-9);
  }
}

TEST(SceneTest, SignedDistanceSignMatchesContainmentPredicate) {
  const Scene scene = mixedScene();
  std::mt19937 rng(405);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const Point3 p{coord(rng), coord(rng), coord(rng)};
    const double d = scene.signedDistance(p);
    if (std::abs(d) <= 1e-9) {
      continue;
    }
    ++checked;
    EXPECT_EQ(d < 0.0, insideScene(scene, p))
        << "at (" << p.x << ", " << p.y << ", " << p.z << "), d = " << d;
  }
  EXPECT_GE(checked, 3900);
}

TEST(SceneTest, MatchesDenseMarchOracleOnRandomRays) {
  const Scene scene = mixedScene();
  std::mt19937 rng(406);
  std::uniform_real_distribution<double> coord(-1.1, 1.1);
  const double step = 1e-4;
  const double max_range = 3.0;

  int accepted = 0;
  int attempts = 0;
  int hits = 0;
  while (accepted < 200 && attempts < 4000) {
    ++attempts;
    const Point3 origin{coord(rng), coord(rng), coord(rng)};
    if (scene.signedDistance(origin) < 1e-3) {
      continue;
    }
    Vec3 dir = randomUnit(rng);
    if (attempts % 2 == 0) {
      // Aim every other ray at the populated part of the workspace so a
      // healthy share of samples exercises the hit path.
      std::uniform_real_distribution<double> target_coord(-0.45, 0.45);
      const Point3 target{target_coord(rng), target_coord(rng),
                          target_coord(rng)};
      const Vec3 to_target = target - origin;
      if (to_target.norm() < 1e-6) {
        continue;
      }
      dir = (1.0 / to_target.norm()) * to_target;
    }
    const auto analytic = scene.castRay(origin, dir, max_range);
    if (analytic) {
      // Skip grazing hits whose chord is thinner than the oracle step; the
      // fixed-step march cannot bracket those.
      bool solid = false;
      for (double lag : {1e-4, 2.5e-4, 5e-4, 1e-3}) {
        if (scene.signedDistance(origin + (*analytic + lag) * dir) < -1e-4) {
          solid = true;
          break;
        }
      }
      if (!solid || *analytic > max_range - 2e-3) {
        continue;
      }
      EXPECT_NEAR(std::abs(scene.signedDistance(origin + *analytic * dir)),
                  0.0, 1e-7);
      const auto marched = marchOracle(scene, origin, dir, max_range, step);
      ASSERT_TRUE(marched.has_value());
      EXPECT_NEAR(*analytic, *marched, 2e-4);
      ++hits;
    } else {
      // A march crossing with no analytic hit would mean the ray truly
      // entered the solid and the closed form missed it.
      EXPECT_FALSE(marchOracle(scene, origin, dir, max_range, step));
    }
    ++accepted;
  }
  ASSERT_EQ(accepted, 200);
  EXPECT_GE(hits, 40);
}

}  // namespace
}  // namespace mmot
