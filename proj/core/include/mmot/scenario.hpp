#ifndef MMOT_SCENARIO_HPP
#define MMOT_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmot/geometry.hpp"
#include "mmot/occupancy_octree.hpp"
#include "mmot/scene.hpp"
#include "mmot/sensor_model.hpp"
#include "mmot/sensor_rig.hpp"
#include "mmot/simulator.hpp"
#include "mmot/trajectory.hpp"

namespace mmot {

/// Which sensor classes feed the map during a run.
enum class SensorSelection { kDepthOnly, kProximityOnly, kFused };

/// "depth", "proximity", or "fused".
std::string_view sensorSelectionName(SensorSelection selection);
std::optional<SensorSelection> parseSensorSelection(std::string_view token);

/// "box", "cylinder", "cone", or "slab".
std::string_view shapeKindName(ShapeKind shape);
std::optional<ShapeKind> parseShapeKind(std::string_view token);

/// Declarative form of one scene solid. Only the dimensions the shape uses
/// are meaningful: extents for boxes and slabs, radius and height for
/// cylinders and cones. The unused ones keep these defaults and are not
/// serialized.
struct PrimitiveSpec {
  ShapeKind shape = ShapeKind::kBox;
  std::string label;
  Point3 position;
  Vec3 yaw_pitch_roll;
  Vec3 extents{0.1, 0.1, 0.1};
  double radius = 0.05;
  double height = 0.1;

  bool operator==(const PrimitiveSpec&) const = default;
};

/// Declarative form of one proximity mount, posed relative to the end
/// effector; the beam leaves along the mount's local z-axis.
struct MountSpec {
  int sensor_id = 0;
  Point3 position;
  Vec3 yaw_pitch_roll;

  bool operator==(const MountSpec&) const = default;
};

/// Complete description of one mapping run. The default-constructed value
/// is itself a valid scenario: an empty scene in a 2 m cube with the stock
/// rig (34 ring mounts, 80x60 depth camera), the stock sensor models, a
/// 0.3 m / 0.188 m/s orbit, 0.04 m map resolution, and a duration of three
/// orbit periods. Empty `mounts` means the stock ring layout; empty
/// `viewpoints` means the reference map is swept from the camera position.
struct ScenarioConfig {
  std::string id = "default";
  std::uint64_t seed = 42;
  double duration = 30.079078598200148;  // three orbit periods
  SensorSelection sensors = SensorSelection::kFused;

  double resolution = 0.04;
  double clamp_min = -2.0;
  double clamp_max = 3.5;
  double occupancy_threshold = 0.0;

  Point3 trajectory_center;
  double trajectory_radius = 0.3;
  double trajectory_speed = 0.188;
  Vec3 trajectory_yaw_pitch_roll;

  Point3 camera_position{1.5, 0.0, 0.7};
  Point3 camera_target{0.0, 0.0, 0.2};
  double depth_sigma = 0.03;
  double depth_hz = 10.0;
  int depth_width = 80;
  int depth_height = 60;
  double depth_fov_x_deg = 70.6;
  double depth_fov_y_deg = 60.0;
  double depth_min_range = 0.5;
  double depth_max_range = 4.0;
  double depth_hit_slope = -0.1;
  double depth_hit_intercept = 1.0;
  double depth_miss_log_odds = -0.4;

  double prox_sigma = 0.02;
  double proximity_hz = 30.0;
  double prox_min_range = 0.04;
  double prox_max_range = 4.0;
  double prox_hit_slope = -0.07;
  double prox_hit_intercept = 1.0;
  double prox_miss_log_odds = -0.4;

  Aabb workspace{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}};
  std::vector<Point3> viewpoints;
  std::vector<MountSpec> mounts;
  std::vector<PrimitiveSpec> primitives;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Parses the line-oriented scenario text: `[section]` headers scope the
/// plain `key = value` lines that follow; `section.key = value` works from
/// anywhere; `#` starts a comment. `[mount]` and `[primitive]` open a new
/// entry per occurrence. Omitted keys keep the documented defaults, so the
/// empty document parses to ScenarioConfig{}. Unknown sections or keys,
/// malformed values, and constraint violations throw ScenarioParseError
/// carrying the offending 1-based line.
ScenarioConfig parseScenario(std::string_view text);

/// Throws IoError when the file cannot be read, ScenarioParseError as above.
ScenarioConfig readScenarioFile(const std::filesystem::path& path);

/// Full textual form; parseScenario(serializeScenario(c)) == c for any
/// config whose shape-unused primitive dimensions sit at their defaults.
std::string serializeScenario(const ScenarioConfig& config);

/// Cross-field checks behind parseScenario, usable on hand-built configs:
/// throws ConfigError naming the offending key when the workspace is
/// inverted, the occupancy threshold leaves the clamp band, a sensor model
/// is inconsistent, mount ids collide, a primitive pokes outside the
/// workspace, or any builder below would reject the config.
void validateScenario(const ScenarioConfig& config);

Scene buildScene(const ScenarioConfig& config);
SensorRig buildRig(const ScenarioConfig& config);
Trajectory buildTrajectory(const ScenarioConfig& config);
SensorModel buildProximityModel(const ScenarioConfig& config);
SensorModel buildDepthModel(const ScenarioConfig& config);
OccupancyOctree buildOctree(const ScenarioConfig& config);
SimulatorOptions simulatorOptions(const ScenarioConfig& config);

/// The configured viewpoints, or the camera position when none are set.
std::vector<Point3> effectiveViewpoints(const ScenarioConfig& config);

/// Built-in benchmark scene: a table carrying a two-compartment shelf that
/// opens toward the orbiting arm and away from the fixed camera, with a cone
/// and a box hidden inside the compartments and a cylinder standing in the
/// open. Matches scenarios/occluded_shelf.scn.
ScenarioConfig occludedShelfScenario();

}  // namespace mmot

#endif  // MMOT_SCENARIO_HPP
