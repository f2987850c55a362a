#include "mmot/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mmot/errors.hpp"
#include "mmot/rng.hpp"

namespace mmot {

Simulator::Simulator(Scene scene, SensorRig rig, Trajectory trajectory,
                     std::uint64_t seed, const SensorModel& proximity_model,
                     const SensorModel& depth_model, SimulatorOptions options)
    : scene_(std::move(scene)),
      rig_(std::move(rig)),
      trajectory_(trajectory),
      seed_(seed),
      options_(options),
      prox_max_range_(proximity_model.maxRange()),
      depth_max_range_(depth_model.maxRange()),
      depth_stride_(0) {
  if (proximity_model.kind() != SensorKind::kProximity) {
    throw ConfigError("proximity_model must be a proximity-class model");
  }
  if (depth_model.kind() != SensorKind::kDepthCamera) {
    throw ConfigError("depth_model must be a depth-camera-class model");
  }
  validateSensorRig(rig_);
  validateTrajectory(trajectory_);
  depth_stride_ = depthTickStride(rig_);
  depth_dirs_ = depthRayDirections(rig_);
}

std::int64_t Simulator::tickCount() const {
  return static_cast<std::int64_t>(
      std::floor(trajectory_.duration * rig_.proximity_hz + 1e-9));
}

double Simulator::tickTime(std::int64_t tick) const {
  return static_cast<double>(tick) / rig_.proximity_hz;
}

bool Simulator::depthDue(std::int64_t tick) const {
  return tick % depth_stride_ == 0;
}

ScanBatch Simulator::simulateTick(std::int64_t tick) const {
  if (tick < 0) {
    throw DomainError("tick must be non-negative");
  }
  const Pose ee = endEffectorPose(trajectory_, tickTime(tick));
  ScanBatch batch;
  batch.tick = tick;

  if (options_.enable_proximity) {
    batch.proximity_readings.reserve(rig_.proximity_mounts.size());
    for (const ProximityMount& mount : rig_.proximity_mounts) {
      const Pose world = ee.compose(mount.pose);
      ProximityReading reading;
      reading.sensor_id = mount.sensor_id;
      reading.sensor_pose = world;
      const auto hit = scene_.castRay(world.translation,
                                      world.rotation.column(2),
                                      prox_max_range_);
      if (hit) {
        SplitMix64 rng = substream(seed_, static_cast<std::uint64_t>(tick),
                                   static_cast<std::uint64_t>(mount.sensor_id),
                                   0);
        const double noisy = *hit + rig_.sigma_prox * standardNormal(rng);
        reading.distance = std::clamp(noisy, 0.0, prox_max_range_);
      }
      batch.proximity_readings.push_back(std::move(reading));
    }
  }

  if (options_.enable_depth && depthDue(tick)) {
    DepthFrame frame;
    frame.camera_pose = rig_.camera_pose;
    frame.returns.reserve(depth_dirs_.size());
    for (std::size_t idx = 0; idx < depth_dirs_.size(); ++idx) {
      const Vec3& local_dir = depth_dirs_[idx];
      const Vec3 world_dir = rig_.camera_pose.rotation * local_dir;
      const auto hit = scene_.castRay(rig_.camera_pose.translation, world_dir,
                                      depth_max_range_);
      if (hit) {
        SplitMix64 rng =
            substream(seed_, static_cast<std::uint64_t>(tick), 0,
                      static_cast<std::uint64_t>(idx) + 1);
        const double noisy = *hit + rig_.sigma_depth * standardNormal(rng);
        // Keep the range strictly positive so the return stays in front of
        // the image plane even when noise drives a very short hit negative.
        const double range = std::clamp(noisy, 1e-9, depth_max_range_);
        frame.returns.push_back(DepthReturn::hitAt(range * local_dir));
      } else {
        frame.returns.push_back(DepthReturn::missAlong(local_dir));
      }
    }
    batch.depth_frame = std::move(frame);
  }

  return batch;
}

}  // namespace mmot
