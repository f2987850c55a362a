#include "mmot/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "mmot/errors.hpp"
#include "mmot/number_format.hpp"

namespace mmot {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string_view trimView(std::string_view s) {
  while (!s.empty() &&
         (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool hasWhitespace(std::string_view s) {
  return s.find(' ') != std::string_view::npos ||
         s.find('\t') != std::string_view::npos;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ScenarioParseError(line, message);
}

double numberField(const std::string& path, std::string_view value, int line) {
  double v = 0.0;
  try {
    v = parseDouble(value);
  } catch (const InvalidInputError&) {
    fail(line, path + " expects a number, got \"" + std::string(value) + "\"");
  }
  if (!std::isfinite(v)) {
    fail(line, path + " must be finite");
  }
  return v;
}

long long intField(const std::string& path, std::string_view value, int line) {
  try {
    return parseInt(value);
  } catch (const InvalidInputError&) {
    fail(line,
         path + " expects an integer, got \"" + std::string(value) + "\"");
  }
}

std::uint64_t unsignedField(const std::string& path, std::string_view value,
                            int line) {
  try {
    return parseUnsigned(value);
  } catch (const InvalidInputError&) {
    fail(line, path + " expects an unsigned integer, got \"" +
                   std::string(value) + "\"");
  }
}

Vec3 vec3Field(const std::string& path, std::string_view value, int line) {
  std::string_view rest = value;
  double parts[3] = {0.0, 0.0, 0.0};
  int count = 0;
  while (true) {
    rest = trimView(rest);
    if (rest.empty()) {
      break;
    }
    std::size_t end = 0;
    while (end < rest.size() && rest[end] != ' ' && rest[end] != '\t') {
      ++end;
    }
    if (count == 3) {
      count = 4;
      break;
    }
    try {
      parts[count] = parseDouble(rest.substr(0, end));
    } catch (const InvalidInputError&) {
      fail(line, path + " expects three numbers \"x y z\", got \"" +
                     std::string(value) + "\"");
    }
    ++count;
    rest.remove_prefix(end);
  }
  if (count != 3) {
    fail(line, path + " expects three numbers \"x y z\", got \"" +
                   std::string(value) + "\"");
  }
  const Vec3 v{parts[0], parts[1], parts[2]};
  if (!v.isFinite()) {
    fail(line, path + " must be finite");
  }
  return v;
}

struct PendingMount {
  MountSpec spec;
  bool id_set = false;
  int line = 0;
};

struct PendingPrimitive {
  PrimitiveSpec spec;
  bool shape_set = false;
  int line = 0;
};

struct ParseState {
  ScenarioConfig config;
  std::vector<PendingMount> mounts;
  std::vector<PendingPrimitive> primitives;
  std::unordered_map<std::string, int> key_lines;
  std::unordered_map<std::string, int> section_lines;
};

bool isSingletonSection(std::string_view name) {
  return name == "run" || name == "octree" || name == "workspace" ||
         name == "trajectory" || name == "camera" || name == "proximity" ||
         name == "viewpoints";
}

void applyRunKey(ParseState& st, const std::string& key,
                 std::string_view value, int line) {
  ScenarioConfig& c = st.config;
  if (key == "id") {
    if (hasWhitespace(value)) {
      fail(line, "run.id must be a single token");
    }
    c.id = std::string(value);
  } else if (key == "seed") {
    c.seed = unsignedField("run.seed", value, line);
  } else if (key == "duration") {
    c.duration = numberField("run.duration", value, line);
  } else if (key == "sensors") {
    const auto selection = parseSensorSelection(value);
    if (!selection) {
      fail(line, "run.sensors must be depth, proximity, or fused, got \"" +
                     std::string(value) + "\"");
    }
    c.sensors = *selection;
  } else {
    fail(line, "unknown key 'run." + key + "'");
  }
}

void applyOctreeKey(ParseState& st, const std::string& key,
                    std::string_view value, int line) {
  ScenarioConfig& c = st.config;
  const std::string path = "octree." + key;
  if (key == "resolution") {
    c.resolution = numberField(path, value, line);
  } else if (key == "clamp_min") {
    c.clamp_min = numberField(path, value, line);
  } else if (key == "clamp_max") {
    c.clamp_max = numberField(path, value, line);
  } else if (key == "occupancy_threshold") {
    c.occupancy_threshold = numberField(path, value, line);
  } else {
    fail(line, "unknown key '" + path + "'");
  }
}

void applyWorkspaceKey(ParseState& st, const std::string& key,
                       std::string_view value, int line) {
  if (key == "min") {
    st.config.workspace.min = vec3Field("workspace.min", value, line);
  } else if (key == "max") {
    st.config.workspace.max = vec3Field("workspace.max", value, line);
  } else {
    fail(line, "unknown key 'workspace." + key + "'");
  }
}

void applyTrajectoryKey(ParseState& st, const std::string& key,
                        std::string_view value, int line) {
  ScenarioConfig& c = st.config;
  const std::string path = "trajectory." + key;
  if (key == "center") {
    c.trajectory_center = vec3Field(path, value, line);
  } else if (key == "radius") {
    c.trajectory_radius = numberField(path, value, line);
  } else if (key == "speed") {
    c.trajectory_speed = numberField(path, value, line);
  } else if (key == "yaw_pitch_roll") {
    c.trajectory_yaw_pitch_roll = vec3Field(path, value, line);
  } else {
    fail(line, "unknown key '" + path + "'");
  }
}

void applyCameraKey(ParseState& st, const std::string& key,
                    std::string_view value, int line) {
  ScenarioConfig& c = st.config;
  const std::string path = "camera." + key;
  if (key == "position") {
    c.camera_position = vec3Field(path, value, line);
  } else if (key == "target") {
    c.camera_target = vec3Field(path, value, line);
  } else if (key == "sigma") {
    c.depth_sigma = numberField(path, value, line);
  } else if (key == "rate_hz") {
    c.depth_hz = numberField(path, value, line);
  } else if (key == "width") {
    c.depth_width = static_cast<int>(intField(path, value, line));
  } else if (key == "height") {
    c.depth_height = static_cast<int>(intField(path, value, line));
  } else if (key == "fov_x_deg") {
    c.depth_fov_x_deg = numberField(path, value, line);
  } else if (key == "fov_y_deg") {
    c.depth_fov_y_deg = numberField(path, value, line);
  } else if (key == "min_range") {
    c.depth_min_range = numberField(path, value, line);
  } else if (key == "max_range") {
    c.depth_max_range = numberField(path, value, line);
  } else if (key == "hit_slope") {
    c.depth_hit_slope = numberField(path, value, line);
  } else if (key == "hit_intercept") {
    c.depth_hit_intercept = numberField(path, value, line);
  } else if (key == "miss_log_odds") {
    c.depth_miss_log_odds = numberField(path, value, line);
  } else {
    fail(line, "unknown key '" + path + "'");
  }
}

void applyProximityKey(ParseState& st, const std::string& key,
                       std::string_view value, int line) {
  ScenarioConfig& c = st.config;
  const std::string path = "proximity." + key;
  if (key == "sigma") {
    c.prox_sigma = numberField(path, value, line);
  } else if (key == "rate_hz") {
    c.proximity_hz = numberField(path, value, line);
  } else if (key == "min_range") {
    c.prox_min_range = numberField(path, value, line);
  } else if (key == "max_range") {
    c.prox_max_range = numberField(path, value, line);
  } else if (key == "hit_slope") {
    c.prox_hit_slope = numberField(path, value, line);
  } else if (key == "hit_intercept") {
    c.prox_hit_intercept = numberField(path, value, line);
  } else if (key == "miss_log_odds") {
    c.prox_miss_log_odds = numberField(path, value, line);
  } else {
    fail(line, "unknown key '" + path + "'");
  }
}

void applyMountKey(ParseState& st, const std::string& key,
                   std::string_view value, int line) {
  PendingMount& m = st.mounts.back();
  const std::string path = "mount." + key;
  if (key == "sensor_id") {
    const long long id = intField(path, value, line);
    if (id < 1 || id > 1000000) {
      fail(line, path + " must be in [1, 1000000]");
    }
    m.spec.sensor_id = static_cast<int>(id);
    m.id_set = true;
  } else if (key == "position") {
    m.spec.position = vec3Field(path, value, line);
  } else if (key == "yaw_pitch_roll") {
    m.spec.yaw_pitch_roll = vec3Field(path, value, line);
  } else {
    fail(line, "unknown key '" + path + "'");
  }
}

void applyPrimitiveKey(ParseState& st, const std::string& key,
                       std::string_view value, int line) {
  PendingPrimitive& p = st.primitives.back();
  const std::string path = "primitive." + key;
  if (key == "shape") {
    if (p.shape_set) {
      fail(line, "shape is already set for this primitive");
    }
    const auto shape = parseShapeKind(value);
    if (!shape) {
      fail(line, path + " must be box, cylinder, cone, or slab, got \"" +
                     std::string(value) + "\"");
    }
    p.spec.shape = *shape;
    p.shape_set = true;
  } else if (key == "label") {
    p.spec.label = std::string(value);
  } else if (key == "position") {
    p.spec.position = vec3Field(path, value, line);
  } else if (key == "yaw_pitch_roll") {
    p.spec.yaw_pitch_roll = vec3Field(path, value, line);
  } else if (key == "extents") {
    if (!p.shape_set) {
      fail(line, "set primitive.shape before extents");
    }
    if (p.spec.shape != ShapeKind::kBox && p.spec.shape != ShapeKind::kSlab) {
      fail(line, "extents applies only to box and slab primitives");
    }
    p.spec.extents = vec3Field(path, value, line);
  } else if (key == "radius" || key == "height") {
    if (!p.shape_set) {
      fail(line, "set primitive.shape before " + key);
    }
    if (p.spec.shape != ShapeKind::kCylinder &&
        p.spec.shape != ShapeKind::kCone) {
      fail(line, key + " applies only to cylinder and cone primitives");
    }
    const double v = numberField(path, value, line);
    (key == "radius" ? p.spec.radius : p.spec.height) = v;
  } else {
    fail(line, "unknown key '" + path + "'");
  }
}

void applyKey(ParseState& st, const std::string& section,
              const std::string& key, std::string_view value, int line) {
  st.key_lines[section + "." + key] = line;
  st.section_lines[section] = line;
  if (section == "run") {
    applyRunKey(st, key, value, line);
  } else if (section == "octree") {
    applyOctreeKey(st, key, value, line);
  } else if (section == "workspace") {
    applyWorkspaceKey(st, key, value, line);
  } else if (section == "trajectory") {
    applyTrajectoryKey(st, key, value, line);
  } else if (section == "camera") {
    applyCameraKey(st, key, value, line);
  } else if (section == "proximity") {
    applyProximityKey(st, key, value, line);
  } else if (section == "viewpoints") {
    if (key != "point") {
      fail(line, "unknown key 'viewpoints." + key + "'");
    }
    st.config.viewpoints.push_back(vec3Field("viewpoints.point", value, line));
  } else if (section == "mount") {
    applyMountKey(st, key, value, line);
  } else if (section == "primitive") {
    applyPrimitiveKey(st, key, value, line);
  } else {
    fail(line, "unknown section '" + section + "'");
  }
}

struct Defect {
  std::string key;
  std::string message;
  // For cross-field defects: a second key to blame when the first one never
  // appeared in the parsed text.
  std::string alt_key;
};

std::optional<Defect> positiveFinite(const std::string& key, double v) {
  if (!(std::isfinite(v) && v > 0.0)) {
    return Defect{key, key + " must be positive"};
  }
  return std::nullopt;
}

std::optional<Defect> modelDefect(const std::string& section, double min_range,
                                  double max_range, double hit_slope,
                                  double hit_intercept, double miss_log_odds) {
  if (!(std::isfinite(min_range) && min_range >= 0.0)) {
    return Defect{section + ".min_range",
                  section + ".min_range must be non-negative"};
  }
  if (auto d = positiveFinite(section + ".max_range", max_range)) {
    return d;
  }
  if (!(max_range > min_range)) {
    return Defect{section + ".max_range",
                  section + ".max_range must exceed min_range"};
  }
  if (!std::isfinite(hit_slope) || !std::isfinite(hit_intercept)) {
    return Defect{section + ".hit_slope",
                  section + " hit ramp parameters must be finite"};
  }
  if (!(hit_slope * max_range + hit_intercept > 0.0)) {
    return Defect{section + ".hit_slope",
                  section + " hit log-odds must stay positive through "
                            "max_range"};
  }
  if (!(std::isfinite(miss_log_odds) && miss_log_odds < 0.0)) {
    return Defect{section + ".miss_log_odds",
                  section + ".miss_log_odds must be negative"};
  }
  return std::nullopt;
}

std::string primitiveName(const PrimitiveSpec& spec, std::size_t index) {
  if (!spec.label.empty()) {
    return "primitive '" + spec.label + "'";
  }
  return "primitive " + std::to_string(index + 1);
}

Primitive buildPrimitive(const PrimitiveSpec& spec) {
  const Pose pose(spec.position,
                  Rotation3::fromYawPitchRoll(spec.yaw_pitch_roll.x,
                                              spec.yaw_pitch_roll.y,
                                              spec.yaw_pitch_roll.z));
  switch (spec.shape) {
    case ShapeKind::kBox:
      return Primitive::box(pose, spec.extents, spec.label);
    case ShapeKind::kSlab:
      return Primitive::slab(pose, spec.extents, spec.label);
    case ShapeKind::kCylinder:
      return Primitive::cylinder(pose, spec.radius, spec.height, spec.label);
    case ShapeKind::kCone:
      return Primitive::cone(pose, spec.radius, spec.height, spec.label);
  }
  throw ConfigError("unknown primitive shape");
}

std::optional<Defect> findScenarioDefect(const ScenarioConfig& c) {
  if (c.id.empty() || hasWhitespace(c.id)) {
    return Defect{"run.id", "scenario id must be a non-empty token"};
  }
  if (auto d = positiveFinite("run.duration", c.duration)) {
    return d;
  }
  if (auto d = positiveFinite("octree.resolution", c.resolution)) {
    return d;
  }
  if (!(std::isfinite(c.clamp_min) && c.clamp_min < 0.0)) {
    return Defect{"octree.clamp_min", "octree.clamp_min must be negative"};
  }
  if (auto d = positiveFinite("octree.clamp_max", c.clamp_max)) {
    return d;
  }
  if (!(std::isfinite(c.occupancy_threshold) &&
        c.occupancy_threshold >= c.clamp_min &&
        c.occupancy_threshold <= c.clamp_max)) {
    return Defect{"octree.occupancy_threshold",
                  "octree.occupancy_threshold must lie within the clamp band"};
  }
  if (!c.workspace.min.isFinite() || !c.workspace.max.isFinite()) {
    return Defect{"workspace.min", "workspace bounds must be finite"};
  }
  if (!(c.workspace.min.x < c.workspace.max.x &&
        c.workspace.min.y < c.workspace.max.y &&
        c.workspace.min.z < c.workspace.max.z)) {
    return Defect{"workspace.max",
                  "workspace min must be strictly below max on every axis"};
  }
  if (!c.trajectory_center.isFinite() ||
      !c.trajectory_yaw_pitch_roll.isFinite()) {
    return Defect{"trajectory.center", "trajectory pose must be finite"};
  }
  if (auto d = positiveFinite("trajectory.radius", c.trajectory_radius)) {
    return d;
  }
  if (auto d = positiveFinite("trajectory.speed", c.trajectory_speed)) {
    return d;
  }
  if (!c.camera_position.isFinite() || !c.camera_target.isFinite()) {
    return Defect{"camera.position", "camera pose must be finite"};
  }
  if ((c.camera_target - c.camera_position).norm() <= 1e-12) {
    return Defect{"camera.target",
                  "camera target must differ from camera position"};
  }
  if (!(std::isfinite(c.depth_sigma) && c.depth_sigma >= 0.0)) {
    return Defect{"camera.sigma", "camera.sigma must be non-negative"};
  }
  if (auto d = positiveFinite("camera.rate_hz", c.depth_hz)) {
    return d;
  }
  if (c.depth_width < 1 || c.depth_height < 1) {
    return Defect{"camera.width",
                  "camera image must be at least one pixel on each side"};
  }
  if (!(c.depth_fov_x_deg > 0.0 && c.depth_fov_x_deg < 180.0 &&
        c.depth_fov_y_deg > 0.0 && c.depth_fov_y_deg < 180.0)) {
    return Defect{"camera.fov_x_deg",
                  "camera field of view must be inside (0, 180) degrees"};
  }
  if (auto d = modelDefect("camera", c.depth_min_range, c.depth_max_range,
                           c.depth_hit_slope, c.depth_hit_intercept,
                           c.depth_miss_log_odds)) {
    return d;
  }
  if (!(std::isfinite(c.prox_sigma) && c.prox_sigma >= 0.0)) {
    return Defect{"proximity.sigma", "proximity.sigma must be non-negative"};
  }
  if (auto d = positiveFinite("proximity.rate_hz", c.proximity_hz)) {
    return d;
  }
  if (c.proximity_hz < c.depth_hz - 1e-9) {
    return Defect{"proximity.rate_hz",
                  "proximity.rate_hz must be at least camera.rate_hz",
                  "camera.rate_hz"};
  }
  if (auto d = modelDefect("proximity", c.prox_min_range, c.prox_max_range,
                           c.prox_hit_slope, c.prox_hit_intercept,
                           c.prox_miss_log_odds)) {
    return d;
  }
  for (const Point3& p : c.viewpoints) {
    if (!p.isFinite()) {
      return Defect{"viewpoints.point", "viewpoints must be finite"};
    }
  }
  std::unordered_set<int> mount_ids;
  for (std::size_t i = 0; i < c.mounts.size(); ++i) {
    const MountSpec& m = c.mounts[i];
    const std::string key = "mount#" + std::to_string(i);
    if (m.sensor_id < 1) {
      return Defect{key, "mount sensor_id must be at least 1"};
    }
    if (!m.position.isFinite() || !m.yaw_pitch_roll.isFinite()) {
      return Defect{key, "mount pose must be finite"};
    }
    if (!mount_ids.insert(m.sensor_id).second) {
      return Defect{key, "duplicate mount sensor_id " +
                             std::to_string(m.sensor_id)};
    }
  }
  for (std::size_t i = 0; i < c.primitives.size(); ++i) {
    const PrimitiveSpec& p = c.primitives[i];
    const std::string key = "primitive#" + std::to_string(i);
    const std::string name = primitiveName(p, i);
    if (!p.position.isFinite() || !p.yaw_pitch_roll.isFinite()) {
      return Defect{key, name + " pose must be finite"};
    }
    if (p.shape == ShapeKind::kBox || p.shape == ShapeKind::kSlab) {
      if (!p.extents.isFinite() || !(p.extents.x > 0.0) ||
          !(p.extents.y > 0.0) || !(p.extents.z > 0.0)) {
        return Defect{key, name + " extents must be positive"};
      }
    } else {
      if (!(std::isfinite(p.radius) && p.radius > 0.0) ||
          !(std::isfinite(p.height) && p.height > 0.0)) {
        return Defect{key, name + " radius and height must be positive"};
      }
    }
    const Aabb bounds = buildPrimitive(p).worldBounds();
    const double tol = 1e-9;
    if (bounds.min.x < c.workspace.min.x - tol ||
        bounds.min.y < c.workspace.min.y - tol ||
        bounds.min.z < c.workspace.min.z - tol ||
        bounds.max.x > c.workspace.max.x + tol ||
        bounds.max.y > c.workspace.max.y + tol ||
        bounds.max.z > c.workspace.max.z + tol) {
      return Defect{key, name + " extends outside the workspace"};
    }
  }
  return std::nullopt;
}

int defectLine(const ParseState& st, const Defect& defect) {
  const std::string& key = defect.key;
  if (key.rfind("mount#", 0) == 0) {
    const std::size_t i = std::stoul(key.substr(6));
    return i < st.mounts.size() ? st.mounts[i].line : 0;
  }
  if (key.rfind("primitive#", 0) == 0) {
    const std::size_t i = std::stoul(key.substr(10));
    return i < st.primitives.size() ? st.primitives[i].line : 0;
  }
  for (const std::string& candidate : {key, defect.alt_key}) {
    if (const auto it = st.key_lines.find(candidate);
        it != st.key_lines.end()) {
      return it->second;
    }
  }
  for (const std::string& candidate : {key, defect.alt_key}) {
    const std::string section = candidate.substr(0, candidate.find('.'));
    if (const auto it = st.section_lines.find(section);
        it != st.section_lines.end()) {
      return it->second;
    }
  }
  return 0;
}

}  // namespace

std::string_view sensorSelectionName(SensorSelection selection) {
  switch (selection) {
    case SensorSelection::kDepthOnly:
      return "depth";
    case SensorSelection::kProximityOnly:
      return "proximity";
    case SensorSelection::kFused:
      return "fused";
  }
  return "fused";
}

std::optional<SensorSelection> parseSensorSelection(std::string_view token) {
  if (token == "depth") {
    return SensorSelection::kDepthOnly;
  }
  if (token == "proximity") {
    return SensorSelection::kProximityOnly;
  }
  if (token == "fused") {
    return SensorSelection::kFused;
  }
  return std::nullopt;
}

std::string_view shapeKindName(ShapeKind shape) {
  switch (shape) {
    case ShapeKind::kBox:
      return "box";
    case ShapeKind::kCylinder:
      return "cylinder";
    case ShapeKind::kCone:
      return "cone";
    case ShapeKind::kSlab:
      return "slab";
  }
  return "box";
}

std::optional<ShapeKind> parseShapeKind(std::string_view token) {
  if (token == "box") {
    return ShapeKind::kBox;
  }
  if (token == "cylinder") {
    return ShapeKind::kCylinder;
  }
  if (token == "cone") {
    return ShapeKind::kCone;
  }
  if (token == "slab") {
    return ShapeKind::kSlab;
  }
  return std::nullopt;
}

ScenarioConfig parseScenario(std::string_view text) {
  ParseState st;
  std::string current_section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw =
        eol == std::string_view::npos
            ? text.substr(pos)
            : text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const std::size_t hash = raw.find('#');
        hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::string_view line = trimView(raw);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(line_no, "malformed section header \"" + std::string(line) +
                          "\"");
      }
      const std::string name(trimView(line.substr(1, line.size() - 2)));
      if (name == "mount") {
        st.mounts.push_back(PendingMount{{}, false, line_no});
      } else if (name == "primitive") {
        st.primitives.push_back(PendingPrimitive{{}, false, line_no});
      } else if (!isSingletonSection(name)) {
        fail(line_no, "unknown section '[" + name + "]'");
      }
      current_section = name;
      st.section_lines[name] = line_no;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(line_no, "expected '[section]' or 'key = value', got \"" +
                        std::string(line) + "\"");
    }
    const std::string key_full(trimView(line.substr(0, eq)));
    const std::string_view value = trimView(line.substr(eq + 1));
    if (key_full.empty()) {
      fail(line_no, "missing key before '='");
    }
    if (value.empty()) {
      fail(line_no, "missing value for '" + key_full + "'");
    }
    if (const std::size_t dot = key_full.find('.');
        dot != std::string::npos) {
      const std::string section = key_full.substr(0, dot);
      const std::string key = key_full.substr(dot + 1);
      if (section.empty() || key.empty()) {
        fail(line_no, "malformed key '" + key_full + "'");
      }
      if (section == "mount" || section == "primitive") {
        fail(line_no,
             "'" + section + "' keys need a [" + section + "] section");
      }
      applyKey(st, section, key, value, line_no);
    } else {
      if (current_section.empty()) {
        fail(line_no,
             "key '" + key_full + "' appears before any [section] header");
      }
      applyKey(st, current_section, key_full, value, line_no);
    }
  }
  for (const PendingMount& m : st.mounts) {
    if (!m.id_set) {
      fail(m.line, "mount needs a sensor_id");
    }
    st.config.mounts.push_back(m.spec);
  }
  for (const PendingPrimitive& p : st.primitives) {
    if (!p.shape_set) {
      fail(p.line, "primitive needs a shape");
    }
    st.config.primitives.push_back(p.spec);
  }
  if (const auto defect = findScenarioDefect(st.config)) {
    fail(defectLine(st, *defect), defect->message);
  }
  return st.config;
}

ScenarioConfig readScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read scenario file: " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading scenario file: " + path.string());
  }
  return parseScenario(text.str());
}

std::string serializeScenario(const ScenarioConfig& c) {
  const auto vec = [](const Vec3& v) {
    return formatDouble(v.x) + " " + formatDouble(v.y) + " " +
           formatDouble(v.z);
  };
  std::ostringstream out;
  out << "# mapping scenario v1\n";
  out << "\n[run]\n";
  out << "id = " << c.id << "\n";
  out << "seed = " << c.seed << "\n";
  out << "duration = " << formatDouble(c.duration) << "\n";
  out << "sensors = " << sensorSelectionName(c.sensors) << "\n";
  out << "\n[octree]\n";
  out << "resolution = " << formatDouble(c.resolution) << "\n";
  out << "clamp_min = " << formatDouble(c.clamp_min) << "\n";
  out << "clamp_max = " << formatDouble(c.clamp_max) << "\n";
  out << "occupancy_threshold = " << formatDouble(c.occupancy_threshold)
      << "\n";
  out << "\n[workspace]\n";
  out << "min = " << vec(c.workspace.min) << "\n";
  out << "max = " << vec(c.workspace.max) << "\n";
  out << "\n[trajectory]\n";
  out << "center = " << vec(c.trajectory_center) << "\n";
  out << "radius = " << formatDouble(c.trajectory_radius) << "\n";
  out << "speed = " << formatDouble(c.trajectory_speed) << "\n";
  out << "yaw_pitch_roll = " << vec(c.trajectory_yaw_pitch_roll) << "\n";
  out << "\n[camera]\n";
  out << "position = " << vec(c.camera_position) << "\n";
  out << "target = " << vec(c.camera_target) << "\n";
  out << "sigma = " << formatDouble(c.depth_sigma) << "\n";
  out << "rate_hz = " << formatDouble(c.depth_hz) << "\n";
  out << "width = " << c.depth_width << "\n";
  out << "height = " << c.depth_height << "\n";
  out << "fov_x_deg = " << formatDouble(c.depth_fov_x_deg) << "\n";
  out << "fov_y_deg = " << formatDouble(c.depth_fov_y_deg) << "\n";
  out << "min_range = " << formatDouble(c.depth_min_range) << "\n";
  out << "max_range = " << formatDouble(c.depth_max_range) << "\n";
  out << "hit_slope = " << formatDouble(c.depth_hit_slope) << "\n";
  out << "hit_intercept = " << formatDouble(c.depth_hit_intercept) << "\n";
  out << "miss_log_odds = " << formatDouble(c.depth_miss_log_odds) << "\n";
  out << "\n[proximity]\n";
  out << "sigma = " << formatDouble(c.prox_sigma) << "\n";
  out << "rate_hz = " << formatDouble(c.proximity_hz) << "\n";
  out << "min_range = " << formatDouble(c.prox_min_range) << "\n";
  out << "max_range = " << formatDouble(c.prox_max_range) << "\n";
  out << "hit_slope = " << formatDouble(c.prox_hit_slope) << "\n";
  out << "hit_intercept = " << formatDouble(c.prox_hit_intercept) << "\n";
  out << "miss_log_odds = " << formatDouble(c.prox_miss_log_odds) << "\n";
  if (!c.viewpoints.empty()) {
    out << "\n[viewpoints]\n";
    for (const Point3& p : c.viewpoints) {
      out << "point = " << vec(p) << "\n";
    }
  }
  for (const MountSpec& m : c.mounts) {
    out << "\n[mount]\n";
    out << "sensor_id = " << m.sensor_id << "\n";
    out << "position = " << vec(m.position) << "\n";
    out << "yaw_pitch_roll = " << vec(m.yaw_pitch_roll) << "\n";
  }
  for (const PrimitiveSpec& p : c.primitives) {
    out << "\n[primitive]\n";
    out << "shape = " << shapeKindName(p.shape) << "\n";
    if (!p.label.empty()) {
      out << "label = " << p.label << "\n";
    }
    out << "position = " << vec(p.position) << "\n";
    out << "yaw_pitch_roll = " << vec(p.yaw_pitch_roll) << "\n";
    if (p.shape == ShapeKind::kBox || p.shape == ShapeKind::kSlab) {
      out << "extents = " << vec(p.extents) << "\n";
    } else {
      out << "radius = " << formatDouble(p.radius) << "\n";
      out << "height = " << formatDouble(p.height) << "\n";
    }
  }
  return out.str();
}

void validateScenario(const ScenarioConfig& config) {
  if (const auto defect = findScenarioDefect(config)) {
    throw ConfigError(defect->message);
  }
}

Scene buildScene(const ScenarioConfig& config) {
  std::vector<Primitive> primitives;
  primitives.reserve(config.primitives.size());
  for (const PrimitiveSpec& spec : config.primitives) {
    primitives.push_back(buildPrimitive(spec));
  }
  return Scene(std::move(primitives), config.workspace);
}

SensorRig buildRig(const ScenarioConfig& config) {
  SensorRig rig;
  if (config.mounts.empty()) {
    rig.proximity_mounts = defaultProximityMounts();
  } else {
    rig.proximity_mounts.reserve(config.mounts.size());
    for (const MountSpec& m : config.mounts) {
      rig.proximity_mounts.push_back(ProximityMount{
          m.sensor_id,
          Pose(m.position,
               Rotation3::fromYawPitchRoll(m.yaw_pitch_roll.x,
                                           m.yaw_pitch_roll.y,
                                           m.yaw_pitch_roll.z))});
    }
  }
  rig.camera_pose = cameraLookAt(config.camera_position, config.camera_target);
  rig.sigma_prox = config.prox_sigma;
  rig.sigma_depth = config.depth_sigma;
  rig.proximity_hz = config.proximity_hz;
  rig.depth_hz = config.depth_hz;
  rig.depth_width = config.depth_width;
  rig.depth_height = config.depth_height;
  rig.depth_fov_x = config.depth_fov_x_deg * kPi / 180.0;
  rig.depth_fov_y = config.depth_fov_y_deg * kPi / 180.0;
  validateSensorRig(rig);
  return rig;
}

Trajectory buildTrajectory(const ScenarioConfig& config) {
  Trajectory traj;
  traj.center = config.trajectory_center;
  traj.radius = config.trajectory_radius;
  traj.speed = config.trajectory_speed;
  traj.plane = Rotation3::fromYawPitchRoll(config.trajectory_yaw_pitch_roll.x,
                                           config.trajectory_yaw_pitch_roll.y,
                                           config.trajectory_yaw_pitch_roll.z);
  traj.duration = config.duration;
  validateTrajectory(traj);
  return traj;
}

SensorModel buildProximityModel(const ScenarioConfig& config) {
  return SensorModel(SensorKind::kProximity, config.prox_min_range,
                     config.prox_max_range, config.prox_hit_slope,
                     config.prox_hit_intercept, config.prox_miss_log_odds);
}

SensorModel buildDepthModel(const ScenarioConfig& config) {
  return SensorModel(SensorKind::kDepthCamera, config.depth_min_range,
                     config.depth_max_range, config.depth_hit_slope,
                     config.depth_hit_intercept, config.depth_miss_log_odds);
}

OccupancyOctree buildOctree(const ScenarioConfig& config) {
  return OccupancyOctree(config.resolution, config.clamp_min, config.clamp_max,
                         config.occupancy_threshold);
}

SimulatorOptions simulatorOptions(const ScenarioConfig& config) {
  SimulatorOptions options;
  options.enable_proximity = config.sensors != SensorSelection::kDepthOnly;
  options.enable_depth = config.sensors != SensorSelection::kProximityOnly;
  return options;
}

std::vector<Point3> effectiveViewpoints(const ScenarioConfig& config) {
  if (!config.viewpoints.empty()) {
    return config.viewpoints;
  }
  return {config.camera_position};
}

ScenarioConfig occludedShelfScenario() {
  ScenarioConfig c;
  c.id = "occluded-shelf";
  c.workspace = Aabb{{-0.7, -0.7, -0.08}, {0.9, 0.7, 0.8}};
  c.trajectory_center = Point3{-0.1, 0.0, 0.28};
  c.camera_position = Point3{1.5, 0.0, 0.7};
  c.camera_target = Point3{0.0, 0.0, 0.2};
  c.viewpoints = {Point3{1.5, 0.0, 0.7}, Point3{-0.3, 0.0, 0.5},
                  Point3{0.05, 0.12, 0.2}, Point3{0.05, -0.12, 0.2}};

  PrimitiveSpec table;
  table.shape = ShapeKind::kSlab;
  table.label = "table";
  table.position = Point3{0.1, 0.0, -0.02};
  table.extents = Vec3{1.4, 1.3, 0.04};

  PrimitiveSpec back;
  back.shape = ShapeKind::kSlab;
  back.label = "shelf-back";
  back.position = Point3{0.54, 0.0, 0.2};
  back.extents = Vec3{0.08, 0.5, 0.4};

  PrimitiveSpec side_left;
  side_left.shape = ShapeKind::kSlab;
  side_left.label = "shelf-side-left";
  side_left.position = Point3{0.38, 0.23, 0.2};
  side_left.extents = Vec3{0.24, 0.04, 0.4};

  PrimitiveSpec side_right = side_left;
  side_right.label = "shelf-side-right";
  side_right.position = Point3{0.38, -0.23, 0.2};

  PrimitiveSpec top;
  top.shape = ShapeKind::kSlab;
  top.label = "shelf-top";
  top.position = Point3{0.38, 0.0, 0.38};
  top.extents = Vec3{0.24, 0.5, 0.04};

  PrimitiveSpec divider;
  divider.shape = ShapeKind::kSlab;
  divider.label = "shelf-divider";
  divider.position = Point3{0.38, 0.0, 0.18};
  divider.extents = Vec3{0.24, 0.03, 0.36};

  PrimitiveSpec cone;
  cone.shape = ShapeKind::kCone;
  cone.label = "hidden-cone";
  cone.position = Point3{0.34, 0.12, 0.09};
  cone.radius = 0.07;
  cone.height = 0.18;

  PrimitiveSpec box;
  box.shape = ShapeKind::kBox;
  box.label = "hidden-box";
  box.position = Point3{0.38, -0.12, 0.05};
  box.extents = Vec3{0.1, 0.1, 0.1};

  PrimitiveSpec cylinder;
  cylinder.shape = ShapeKind::kCylinder;
  cylinder.label = "open-cylinder";
  cylinder.position = Point3{-0.25, 0.45, 0.1};
  cylinder.radius = 0.07;
  cylinder.height = 0.2;

  c.primitives = {table, back,    side_left, side_right, top,
                  divider, cone,  box,       cylinder};
  return c;
}

}  // namespace mmot
