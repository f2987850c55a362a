#include "mmot/sensor_model.hpp"

#include <cmath>

#include "mmot/errors.hpp"

namespace mmot {

SensorModel::SensorModel(SensorKind kind, double min_range, double max_range,
                         double hit_slope, double hit_intercept,
                         double miss_log_odds)
    : kind_(kind),
      min_range_(min_range),
      max_range_(max_range),
      hit_slope_(hit_slope),
      hit_intercept_(hit_intercept),
      miss_log_odds_(miss_log_odds) {
  if (!std::isfinite(min_range) || !std::isfinite(max_range) ||
      !std::isfinite(hit_slope) || !std::isfinite(hit_intercept) ||
      !std::isfinite(miss_log_odds)) {
    throw InvalidInputError("sensor model parameters must be finite");
  }
  if (!(0.0 <= min_range && min_range < max_range)) {
    throw InvalidInputError("sensor model requires 0 <= min_range < max_range");
  }
  if (!(miss_log_odds < 0.0)) {
    throw InvalidInputError("miss log-odds must be negative");
  }
  if (!(hit_slope * max_range + hit_intercept > 0.0)) {
    throw InvalidInputError(
        "hit log-odds must stay positive through max_range");
  }
}

SensorModel SensorModel::proximityDefaults() {
  return SensorModel(SensorKind::kProximity, 0.04, 4.0, -0.07, 1.0, -0.4);
}

SensorModel SensorModel::depthCameraDefaults() {
  return SensorModel(SensorKind::kDepthCamera, 0.5, 4.0, -0.1, 1.0, -0.4);
}

double SensorModel::hitLogOdds(double d) const {
  if (!std::isfinite(d) || d < 0.0 || d > max_range_) {
    throw InvalidInputError("hit distance outside [0, max_range]");
  }
  if (d < min_range_) {
    return 0.0;
  }
  return hit_slope_ * d + hit_intercept_;
}

BeamMeasurement beamFromProximity(const ProximityReading& reading,
                                  const SensorModel& model) {
  if (model.kind() != SensorKind::kProximity) {
    throw InvalidInputError("proximity reading requires a proximity model");
  }
  if (reading.sensor_id < 1) {
    throw InvalidInputError("proximity sensor ids are 1-based");
  }
  BeamMeasurement beam;
  beam.origin = reading.sensor_pose.translation;
  beam.source_kind = SensorKind::kProximity;
  beam.source_id = reading.sensor_id;
  if (reading.distance.has_value()) {
    const double d = *reading.distance;
    if (!std::isfinite(d) || d < 0.0 || d > model.maxRange()) {
      throw InvalidInputError("proximity distance outside [0, max_range]");
    }
    beam.endpoint = proximityObjectPosition(reading.sensor_pose, d);
    beam.range = d;
    beam.hit = true;
  } else {
    beam.endpoint =
        proximityObjectPosition(reading.sensor_pose, model.maxRange());
    beam.range = model.maxRange();
    beam.hit = false;
  }
  return beam;
}

std::vector<BeamMeasurement> beamsFromDepth(const DepthFrame& frame,
                                            const SensorModel& model) {
  if (model.kind() != SensorKind::kDepthCamera) {
    throw InvalidInputError("depth frame requires a depth-camera model");
  }
  std::vector<BeamMeasurement> beams;
  beams.reserve(frame.returns.size());
  for (const DepthReturn& ray : frame.returns) {
    if (!ray.point.isFinite()) {
      throw InvalidInputError("depth return components must be finite");
    }
    BeamMeasurement beam;
    beam.origin = frame.camera_pose.translation;
    beam.source_kind = SensorKind::kDepthCamera;
    beam.source_id = 0;
    if (ray.hit) {
      if (!(ray.point.z > 0.0)) {
        throw InvalidInputError("depth returns must lie in front of the camera");
      }
      beam.endpoint = depthObjectPosition(frame.camera_pose, ray.point);
      beam.range = ray.point.norm();
      beam.hit = true;
    } else {
      if (!(ray.point.z > 0.0) ||
          std::abs(ray.point.norm() - 1.0) > 1e-9) {
        throw InvalidInputError(
            "depth miss directions must be unit length with z > 0");
      }
      beam.endpoint = depthObjectPosition(frame.camera_pose,
                                          ray.point * model.maxRange());
      beam.range = model.maxRange();
      beam.hit = false;
    }
    beams.push_back(beam);
  }
  return beams;
}

}  // namespace mmot
