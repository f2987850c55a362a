#ifndef MMOT_SIMULATOR_HPP
#define MMOT_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "mmot/scan_fusion.hpp"
#include "mmot/scene.hpp"
#include "mmot/sensor_model.hpp"
#include "mmot/sensor_rig.hpp"
#include "mmot/trajectory.hpp"

namespace mmot {

/// Which sensor classes the simulator synthesizes. Because every ray draws
/// its noise from an independent substream keyed by (tick, sensor, ray),
/// disabling one class leaves the other's measurements bit-identical.
struct SimulatorOptions {
  bool enable_proximity = true;
  bool enable_depth = true;

  bool operator==(const SimulatorOptions&) const = default;
};

/// Deterministic measurement synthesizer: casts proximity and depth rays
/// against the scene from the rig poses along the trajectory and applies
/// seeded Gaussian range noise. Stateless per tick: simulateTick is a pure
/// function of (scene, rig, trajectory, seed, tick).
class Simulator {
 public:
  /// Operational max ranges come from the supplied sensor models so the
  /// synthesized readings always pass the beam builders' range checks.
  /// Throws InvalidInputError/ConfigError for invalid rig, trajectory, or
  /// model classes.
  Simulator(Scene scene, SensorRig rig, Trajectory trajectory,
            std::uint64_t seed,
            const SensorModel& proximity_model = SensorModel::proximityDefaults(),
            const SensorModel& depth_model = SensorModel::depthCameraDefaults(),
            SimulatorOptions options = {});

  /// Measurements for one proximity tick at t = tick / proximity_hz; every
  /// depthTickStride-th tick (starting at 0) also carries a depth frame.
  /// Throws DomainError when the tick falls outside the trajectory duration.
  ScanBatch simulateTick(std::int64_t tick) const;

  /// floor(duration * proximity_hz) ticks, numbered from 0.
  std::int64_t tickCount() const;

  double tickTime(std::int64_t tick) const;
  bool depthDue(std::int64_t tick) const;

  const Scene& scene() const { return scene_; }
  const SensorRig& rig() const { return rig_; }
  const Trajectory& trajectory() const { return trajectory_; }
  std::uint64_t seed() const { return seed_; }
  const SimulatorOptions& options() const { return options_; }

 private:
  Scene scene_;
  SensorRig rig_;
  Trajectory trajectory_;
  std::uint64_t seed_;
  SimulatorOptions options_;
  double prox_max_range_;
  double depth_max_range_;
  int depth_stride_;
  std::vector<Vec3> depth_dirs_;
};

}  // namespace mmot

#endif  // MMOT_SIMULATOR_HPP
