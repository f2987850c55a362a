#include "mmot/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "mmot/errors.hpp"
#include "mmot/simulator.hpp"

namespace mmot {
namespace {

constexpr double kPi = 3.14159265358979323846;

int lineOfFailure(const std::string& text) {
  try {
    parseScenario(text);
  } catch (const ScenarioParseError& e) {
    return e.line();
  }
  return -1;
}

std::string messageOfFailure(const std::string& text) {
  try {
    parseScenario(text);
  } catch (const ScenarioParseError& e) {
    return e.what();
  }
  return "";
}

TEST(ScenarioConfigTest, DefaultsMatchTheStockSetup) {
  const ScenarioConfig c;
  EXPECT_EQ(c.id, "default");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.sensors, SensorSelection::kFused);
  EXPECT_DOUBLE_EQ(c.resolution, 0.04);
  EXPECT_DOUBLE_EQ(c.clamp_min, -2.0);
  EXPECT_DOUBLE_EQ(c.clamp_max, 3.5);
  EXPECT_DOUBLE_EQ(c.occupancy_threshold, 0.0);
  EXPECT_DOUBLE_EQ(c.trajectory_radius, 0.3);
  EXPECT_DOUBLE_EQ(c.trajectory_speed, 0.188);
  EXPECT_DOUBLE_EQ(c.prox_sigma, 0.02);
  EXPECT_DOUBLE_EQ(c.depth_sigma, 0.03);
  EXPECT_DOUBLE_EQ(c.proximity_hz, 30.0);
  EXPECT_DOUBLE_EQ(c.depth_hz, 10.0);
  EXPECT_EQ(c.depth_width, 80);
  EXPECT_EQ(c.depth_height, 60);
  // Three full orbit periods at the stock radius and speed.
  EXPECT_NEAR(c.duration, 3.0 * 2.0 * kPi * 0.3 / 0.188, 1e-12);
  EXPECT_TRUE(c.mounts.empty());
  EXPECT_TRUE(c.viewpoints.empty());
  EXPECT_TRUE(c.primitives.empty());
  validateScenario(c);
}

TEST(ScenarioParseTest, EmptyDocumentYieldsPureDefaults) {
  EXPECT_EQ(parseScenario(""), ScenarioConfig{});
  EXPECT_EQ(parseScenario("\n\n# only a comment\n   \n"), ScenarioConfig{});
}

TEST(ScenarioParseTest, SectionsAndDottedKeysAreEquivalent) {
  const ScenarioConfig a = parseScenario("[trajectory]\nradius = 0.42\n");
  const ScenarioConfig b = parseScenario("trajectory.radius = 0.42\n");
  EXPECT_EQ(a, b);
  EXPECT_DOUBLE_EQ(a.trajectory_radius, 0.42);
}

TEST(ScenarioParseTest, ParsesScalarsVectorsAndTokens) {
  const ScenarioConfig c = parseScenario(
      "[run]\n"
      "id = bench-3  # trailing comment\n"
      "seed = 18446744073709551615\n"
      "duration = 1.5\n"
      "sensors = proximity\n"
      "[workspace]\n"
      "min = -0.5 -0.25 0\n"
      "max = 0.5 0.25 1\n"
      "octree.resolution = 0.02\n");
  EXPECT_EQ(c.id, "bench-3");
  EXPECT_EQ(c.seed, 18446744073709551615ull);
  EXPECT_DOUBLE_EQ(c.duration, 1.5);
  EXPECT_EQ(c.sensors, SensorSelection::kProximityOnly);
  EXPECT_EQ(c.workspace, (Aabb{{-0.5, -0.25, 0.0}, {0.5, 0.25, 1.0}}));
  EXPECT_DOUBLE_EQ(c.resolution, 0.02);
}

TEST(ScenarioParseTest, LaterAssignmentsWin) {
  const ScenarioConfig c =
      parseScenario("[run]\nseed = 1\nseed = 2\n");
  EXPECT_EQ(c.seed, 2u);
}

TEST(ScenarioParseTest, NegativeRadiusNamesTheLine) {
  EXPECT_EQ(lineOfFailure("\n\ntrajectory.radius = -1\n"), 3);
  EXPECT_NE(messageOfFailure("\n\ntrajectory.radius = -1\n")
                .find("trajectory.radius must be positive"),
            std::string::npos);
  EXPECT_EQ(lineOfFailure("[trajectory]\ncenter = 0 0 0\nradius = -1\n"), 3);
}

TEST(ScenarioParseTest, ReportsUnknownKeysSectionsAndTypes) {
  EXPECT_EQ(lineOfFailure("[run]\nspeed = 1\n"), 2);
  EXPECT_NE(messageOfFailure("[run]\nspeed = 1\n").find("unknown key"),
            std::string::npos);
  EXPECT_EQ(lineOfFailure("[orbit]\n"), 1);
  EXPECT_EQ(lineOfFailure("orbit.radius = 1\n"), 1);
  EXPECT_EQ(lineOfFailure("[run]\nduration = fast\n"), 2);
  EXPECT_EQ(lineOfFailure("[workspace]\nmin = 1 2\n"), 2);
  EXPECT_EQ(lineOfFailure("[workspace]\nmin = 1 2 3 4\n"), 2);
  EXPECT_EQ(lineOfFailure("[run]\nduration = inf\n"), 2);
  EXPECT_EQ(lineOfFailure("[run]\nseed = -3\n"), 2);
  EXPECT_EQ(lineOfFailure("[run]\nsensors = lidar\n"), 2);
  EXPECT_EQ(lineOfFailure("[run]\nduration =\n"), 2);
  EXPECT_EQ(lineOfFailure("radius = 1\n"), 1);
  EXPECT_EQ(lineOfFailure("just some words\n"), 1);
  EXPECT_EQ(lineOfFailure("[run\n"), 1);
}

TEST(ScenarioParseTest, CrossFieldViolationsNameARelevantLine) {
  EXPECT_EQ(lineOfFailure("[workspace]\nmin = 1 1 1\nmax = 0 0 0\n"), 3);
  EXPECT_EQ(lineOfFailure("octree.occupancy_threshold = 9\n"), 1);
  EXPECT_EQ(lineOfFailure("[camera]\nrate_hz = 200\n"), 2);
  EXPECT_EQ(
      lineOfFailure("[proximity]\nmin_range = 2\nmax_range = 1.5\n"), 3);
  EXPECT_EQ(lineOfFailure("[camera]\ntarget = 1.5 0 0.7\nposition = 1.5 0 0.7\n"),
            2);
}

TEST(ScenarioParseTest, MountSectionsCollectAndValidate) {
  const ScenarioConfig c = parseScenario(
      "[mount]\n"
      "sensor_id = 3\n"
      "position = 0.05 0 0\n"
      "yaw_pitch_roll = 0 1.5707963267948966 0\n"
      "[mount]\n"
      "sensor_id = 4\n"
      "position = -0.05 0 0\n");
  ASSERT_EQ(c.mounts.size(), 2u);
  EXPECT_EQ(c.mounts[0].sensor_id, 3);
  EXPECT_EQ(c.mounts[1].sensor_id, 4);
  const SensorRig rig = buildRig(c);
  ASSERT_EQ(rig.proximity_mounts.size(), 2u);
  EXPECT_NEAR(rig.proximity_mounts[0].pose.rotation.column(2).x, 1.0, 1e-12);

  EXPECT_EQ(lineOfFailure("[mount]\nposition = 0 0 0\n"), 1);
  EXPECT_EQ(lineOfFailure("[mount]\nsensor_id = 0\n"), 2);
  EXPECT_EQ(lineOfFailure("mount.sensor_id = 1\n"), 1);
  EXPECT_EQ(lineOfFailure("[mount]\nsensor_id = 1\n"
                          "[mount]\nsensor_id = 1\n"),
            3);
}

TEST(ScenarioParseTest, PrimitiveSectionsRequireShapeFirst) {
  const ScenarioConfig c = parseScenario(
      "[primitive]\n"
      "shape = cone\n"
      "label = marker\n"
      "position = 0.2 0 0.1\n"
      "radius = 0.05\n"
      "height = 0.2\n");
  ASSERT_EQ(c.primitives.size(), 1u);
  EXPECT_EQ(c.primitives[0].shape, ShapeKind::kCone);
  EXPECT_EQ(c.primitives[0].label, "marker");
  EXPECT_DOUBLE_EQ(c.primitives[0].radius, 0.05);

  EXPECT_EQ(lineOfFailure("[primitive]\nposition = 0 0 0\n"), 1);
  EXPECT_EQ(lineOfFailure("[primitive]\nextents = 1 1 1\n"), 2);
  EXPECT_EQ(lineOfFailure("[primitive]\nshape = blob\n"), 2);
  EXPECT_EQ(lineOfFailure("[primitive]\nshape = box\nradius = 1\n"), 3);
  EXPECT_EQ(lineOfFailure("[primitive]\nshape = cone\nextents = 1 1 1\n"), 3);
  EXPECT_EQ(lineOfFailure("[primitive]\nshape = box\nshape = slab\n"), 3);
  EXPECT_EQ(lineOfFailure("primitive.shape = box\n"), 1);
}

TEST(ScenarioParseTest, PrimitiveOutsideWorkspaceNamesItsSection) {
  const std::string text =
      "[workspace]\nmin = -1 -1 -1\nmax = 1 1 1\n"
      "[primitive]\nshape = box\nposition = 0.99 0 0\nextents = 0.1 0.1 0.1\n";
  EXPECT_EQ(lineOfFailure(text), 4);
  EXPECT_NE(messageOfFailure(text).find("outside the workspace"),
            std::string::npos);
}

TEST(ScenarioParseTest, ViewpointsAccumulate) {
  const ScenarioConfig c = parseScenario(
      "[viewpoints]\npoint = 1 0 0.5\npoint = -1 0 0.5\n");
  ASSERT_EQ(c.viewpoints.size(), 2u);
  EXPECT_EQ(c.viewpoints[1], (Point3{-1.0, 0.0, 0.5}));
}

TEST(ScenarioSerializeTest, RoundTripsTheBenchmarkScenario) {
  const ScenarioConfig original = occludedShelfScenario();
  const std::string text = serializeScenario(original);
  const ScenarioConfig reparsed = parseScenario(text);
  EXPECT_EQ(reparsed, original);
  EXPECT_EQ(serializeScenario(reparsed), text);
}

TEST(ScenarioSerializeTest, RoundTripsExplicitMountsAndViewpoints) {
  ScenarioConfig c;
  c.id = "custom";
  c.seed = 7;
  c.sensors = SensorSelection::kDepthOnly;
  c.viewpoints = {Point3{0.25, -0.125, 0.5}};
  MountSpec mount;
  mount.sensor_id = 9;
  mount.position = Point3{0.05, 0.0, -0.03};
  mount.yaw_pitch_roll = Vec3{0.1, -0.2, 0.3};
  c.mounts = {mount};
  PrimitiveSpec cyl;
  cyl.shape = ShapeKind::kCylinder;
  cyl.position = Point3{0.0, 0.0, 0.2};
  cyl.radius = 0.125;
  cyl.height = 0.4;
  c.primitives = {cyl};
  EXPECT_EQ(parseScenario(serializeScenario(c)), c);
}

TEST(ScenarioFileTest, BundledScenarioMatchesTheBuiltin) {
  const std::filesystem::path path =
      std::filesystem::path(MMOT_SCENARIO_DIR) / "occluded_shelf.scn";
  const ScenarioConfig from_file = readScenarioFile(path);
  EXPECT_EQ(from_file, occludedShelfScenario());

  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), serializeScenario(occludedShelfScenario()));
}

TEST(ScenarioFileTest, MissingFileRaisesIoError) {
  EXPECT_THROW(readScenarioFile("/nonexistent/scenario.scn"), IoError);
}

TEST(ScenarioBuildTest, BuildersRealizeTheConfig) {
  const ScenarioConfig c = occludedShelfScenario();
  const Scene scene = buildScene(c);
  EXPECT_EQ(scene.primitives().size(), c.primitives.size());
  EXPECT_EQ(scene.workspace(), c.workspace);

  const SensorRig rig = buildRig(c);
  EXPECT_EQ(rig.proximity_mounts.size(), 34u);
  EXPECT_EQ(rig.camera_pose,
            cameraLookAt(c.camera_position, c.camera_target));
  EXPECT_NEAR(rig.depth_fov_x, c.depth_fov_x_deg * kPi / 180.0, 1e-15);
  EXPECT_NEAR(rig.depth_fov_y, c.depth_fov_y_deg * kPi / 180.0, 1e-15);

  const Trajectory traj = buildTrajectory(c);
  EXPECT_EQ(traj.center, c.trajectory_center);
  EXPECT_DOUBLE_EQ(traj.duration, c.duration);

  const SensorModel prox = buildProximityModel(c);
  EXPECT_EQ(prox.kind(), SensorKind::kProximity);
  EXPECT_DOUBLE_EQ(prox.minRange(), c.prox_min_range);
  const SensorModel depth = buildDepthModel(c);
  EXPECT_EQ(depth.kind(), SensorKind::kDepthCamera);
  EXPECT_DOUBLE_EQ(depth.maxRange(), c.depth_max_range);

  const OccupancyOctree octree = buildOctree(c);
  EXPECT_DOUBLE_EQ(octree.resolution(), c.resolution);
  EXPECT_DOUBLE_EQ(octree.clampMax(), c.clamp_max);

  const Simulator simulator(scene, rig, traj, c.seed, prox, depth,
                            simulatorOptions(c));
  EXPECT_EQ(simulator.tickCount(), 902);
}

TEST(ScenarioBuildTest, SensorSelectionMapsToSimulatorSwitches) {
  ScenarioConfig c;
  c.sensors = SensorSelection::kDepthOnly;
  EXPECT_EQ(simulatorOptions(c), (SimulatorOptions{false, true}));
  c.sensors = SensorSelection::kProximityOnly;
  EXPECT_EQ(simulatorOptions(c), (SimulatorOptions{true, false}));
  c.sensors = SensorSelection::kFused;
  EXPECT_EQ(simulatorOptions(c), (SimulatorOptions{true, true}));
}

TEST(ScenarioBuildTest, ViewpointsFallBackToTheCameraPosition) {
  ScenarioConfig c;
  EXPECT_EQ(effectiveViewpoints(c),
            std::vector<Point3>{c.camera_position});
  c.viewpoints = {Point3{0.0, 0.0, 0.5}};
  EXPECT_EQ(effectiveViewpoints(c), c.viewpoints);
}

TEST(ScenarioValidateTest, RejectsHandBuiltDefects) {
  ScenarioConfig c;
  c.duration = 0.0;
  EXPECT_THROW(validateScenario(c), ConfigError);
  c = ScenarioConfig{};
  c.clamp_min = 0.5;
  EXPECT_THROW(validateScenario(c), ConfigError);
  c = ScenarioConfig{};
  c.occupancy_threshold = 4.0;
  EXPECT_THROW(validateScenario(c), ConfigError);
  c = ScenarioConfig{};
  c.mounts = {MountSpec{2, {}, {}}, MountSpec{2, {0.1, 0.0, 0.0}, {}}};
  EXPECT_THROW(validateScenario(c), ConfigError);
  c = ScenarioConfig{};
  c.id = "two words";
  EXPECT_THROW(validateScenario(c), ConfigError);
  c = ScenarioConfig{};
  PrimitiveSpec p;
  p.shape = ShapeKind::kCylinder;
  p.radius = -0.1;
  c.primitives = {p};
  EXPECT_THROW(validateScenario(c), ConfigError);
}

TEST(ScenarioTokenTest, NamesRoundTrip) {
  for (const SensorSelection s :
       {SensorSelection::kDepthOnly, SensorSelection::kProximityOnly,
        SensorSelection::kFused}) {
    EXPECT_EQ(parseSensorSelection(sensorSelectionName(s)), s);
  }
  for (const ShapeKind s : {ShapeKind::kBox, ShapeKind::kCylinder,
                            ShapeKind::kCone, ShapeKind::kSlab}) {
    EXPECT_EQ(parseShapeKind(shapeKindName(s)), s);
  }
  EXPECT_FALSE(parseSensorSelection("both").has_value());
  EXPECT_FALSE(parseShapeKind("sphere").has_value());
}

TEST(ScenarioBenchmarkSceneTest, ShelfHidesTheConeAndBoxFromTheCamera) {
  const ScenarioConfig c = occludedShelfScenario();
  const Scene scene = buildScene(c);
  const Primitive* cone = nullptr;
  const Primitive* box = nullptr;
  for (const Primitive& p : scene.primitives()) {
    if (p.label() == "hidden-cone") {
      cone = &p;
    }
    if (p.label() == "hidden-box") {
      box = &p;
    }
  }
  ASSERT_NE(cone, nullptr);
  ASSERT_NE(box, nullptr);
  // March straight lines from the camera to points on the hidden solids:
  // every sight line must strike some other primitive first.
  for (const Primitive* target : {cone, box}) {
    const Aabb b = target->worldBounds();
    for (int n = 0; n < 64; ++n) {
      const double u = (n % 4 + 0.5) / 4.0;
      const double v = (n / 4 % 4 + 0.5) / 4.0;
      const double w = (n / 16 + 0.5) / 4.0;
      const Point3 probe{b.min.x + u * (b.max.x - b.min.x),
                         b.min.y + v * (b.max.y - b.min.y),
                         b.min.z + w * (b.max.z - b.min.z)};
      if (target->signedDistance(probe) > -1e-4) {
        continue;
      }
      const Vec3 to_probe = probe - c.camera_position;
      const double dist = to_probe.norm();
      const auto hit =
          scene.castRay(c.camera_position, to_probe * (1.0 / dist), dist);
      ASSERT_TRUE(hit.has_value());
      const Point3 surface = c.camera_position + *hit * to_probe * (1.0 / dist);
      EXPECT_GT(target->signedDistance(surface), 1e-4);
    }
  }
}

}  // namespace
}  // namespace mmot
