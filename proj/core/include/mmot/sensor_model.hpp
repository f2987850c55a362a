#ifndef MMOT_SENSOR_MODEL_HPP
#define MMOT_SENSOR_MODEL_HPP

#include <optional>
#include <vector>

#include "mmot/geometry.hpp"

namespace mmot {

enum class SensorKind { kProximity, kDepthCamera };

/// Per-sensor-class measurement model: a range-dependent hit log-odds
/// ramp with a dead zone below min_range, a constant negative miss
/// log-odds for carving traversed space, and operational range limits.
/// All constants are configurable; the static factories carry the
/// defaults for the two supported classes.
class SensorModel {
 public:
  SensorModel(SensorKind kind, double min_range, double max_range,
              double hit_slope, double hit_intercept, double miss_log_odds);

  /// Short-range time-of-flight ranger: dead zone below 0.04 m, hit ramp
  /// -0.07 d + 1, miss -0.4, operational to 4 m.
  static SensorModel proximityDefaults();

  /// Depth camera: operational range starts at 0.5 m, hit ramp -0.1 d + 1,
  /// miss -0.4, operational to 4 m.
  static SensorModel depthCameraDefaults();

  SensorKind kind() const { return kind_; }
  double minRange() const { return min_range_; }
  double maxRange() const { return max_range_; }
  double hitSlope() const { return hit_slope_; }
  double hitIntercept() const { return hit_intercept_; }

  /// Endpoint update for a hit at distance d: 0 below min_range (the dead
  /// zone is an additive identity; free-space carving along the beam still
  /// applies), otherwise hit_slope * d + hit_intercept.
  /// Throws InvalidInputError outside [0, max_range]; callers convert
  /// beyond-range readings to misses before modeling them.
  double hitLogOdds(double d) const;

  double missLogOdds() const { return miss_log_odds_; }

  bool operator==(const SensorModel&) const = default;

 private:
  SensorKind kind_;
  double min_range_;
  double max_range_;
  double hit_slope_;
  double hit_intercept_;
  double miss_log_odds_;
};

/// One reading from proximity sensor `sensor_id` (1-based): the sensed
/// distance along the sensor's z-axis, or nullopt when nothing is sensed
/// within the operational range.
struct ProximityReading {
  int sensor_id = 1;
  Pose sensor_pose;
  std::optional<double> distance;

  bool operator==(const ProximityReading&) const = default;
};

/// One depth-camera ray. For a hit, `point` is the camera-frame return
/// position (z > 0). For a miss, `point` is the camera-frame unit direction
/// of the pixel ray, which the beam builder extends to max_range.
struct DepthReturn {
  Point3 point;
  bool hit = true;

  static DepthReturn hitAt(const Point3& point) { return {point, true}; }
  static DepthReturn missAlong(const Vec3& direction) {
    return {direction, false};
  }

  bool operator==(const DepthReturn&) const = default;
};

struct DepthFrame {
  Pose camera_pose;
  std::vector<DepthReturn> returns;

  bool operator==(const DepthFrame&) const = default;
};

/// World-frame beam from a sensor origin to a sensed object or, for a miss,
/// to the max-range carve endpoint. |endpoint - origin| equals range to
/// within 1e-9.
struct BeamMeasurement {
  Point3 origin;
  Point3 endpoint;
  double range = 0.0;
  bool hit = true;
  SensorKind source_kind = SensorKind::kProximity;
  int source_id = 0;
};

/// Throws InvalidInputError for ids below 1, distances outside
/// [0, max_range], or a model of the wrong class.
BeamMeasurement beamFromProximity(const ProximityReading& reading,
                                  const SensorModel& model);

/// One beam per ray, in ray order; depth beams report source_id 0.
/// Throws InvalidInputError when a hit return has z <= 0, a miss direction
/// is not unit length (within 1e-9) with z > 0, or the model is of the
/// wrong class.
std::vector<BeamMeasurement> beamsFromDepth(const DepthFrame& frame,
                                            const SensorModel& model);

}  // namespace mmot

#endif  // MMOT_SENSOR_MODEL_HPP
