#include <benchmark/benchmark.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mmot/geometry.hpp"
#include "mmot/occupancy_octree.hpp"
#include "mmot/scan_fusion.hpp"
#include "mmot/sensor_model.hpp"

namespace {

using namespace mmot;

ScanBatch makeBatch(std::int64_t tick, int proximity_count, int depth_rays,
                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::uniform_real_distribution<double> distance(0.1, 3.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  ScanBatch batch;
  batch.tick = tick;
  for (int n = 0; n < proximity_count; ++n) {
    ProximityReading reading;
    reading.sensor_id = n + 1;
    reading.sensor_pose =
        Pose({coord(rng), coord(rng), coord(rng)},
             Rotation3::fromYawPitchRoll(angle(rng), angle(rng) / 2.0, 0.0));
    reading.distance = unit(rng) < 0.8
                           ? std::optional<double>(distance(rng))
                           : std::nullopt;
    batch.proximity_readings.push_back(reading);
  }
  if (depth_rays > 0) {
    DepthFrame frame;
    frame.camera_pose = Pose({1.2, 0.0, 0.6}, Rotation3::identity());
    std::uniform_real_distribution<double> depth_z(0.1, 3.0);
    for (int n = 0; n < depth_rays; ++n) {
      // Lateral spread stays within half the depth so the return norm keeps
      // clear of the 4 m operational limit.
      const double z = depth_z(rng);
      frame.returns.push_back(DepthReturn::hitAt(
          {(unit(rng) - 0.5) * z, (unit(rng) - 0.5) * z, z}));
    }
    batch.depth_frame = frame;
  }
  return batch;
}

void BM_IntegrateProximityBatch(benchmark::State& state) {
  const int readings = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4242);
  MapIntegrator integrator(OccupancyOctree(0.04),
                           SensorModel::depthCameraDefaults(),
                           SensorModel::proximityDefaults());
  std::int64_t tick = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const ScanBatch batch = makeBatch(tick++, readings, 0, rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(integrator.integrateScan(batch));
  }
  state.SetItemsProcessed(state.iterations() * readings);
}
BENCHMARK(BM_IntegrateProximityBatch)->Arg(8)->Arg(34)->Arg(128);

void BM_IntegrateDepthFrame(benchmark::State& state) {
  const int rays = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4243);
  MapIntegrator integrator(OccupancyOctree(0.04),
                           SensorModel::depthCameraDefaults(),
                           SensorModel::proximityDefaults());
  std::int64_t tick = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const ScanBatch batch = makeBatch(tick++, 0, rays, rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(integrator.integrateScan(batch));
  }
  state.SetItemsProcessed(state.iterations() * rays);
}
BENCHMARK(BM_IntegrateDepthFrame)->Arg(400)->Arg(4800);

void BM_ApplyUpdate(benchmark::State& state) {
  OccupancyOctree map;
  std::int32_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(map.applyUpdate({i & 1023, (i >> 2) & 511, 7},
                                             i % 2 == 0 ? 0.85 : -0.4));
    ++i;
  }
}
BENCHMARK(BM_ApplyUpdate);

}  // namespace

BENCHMARK_MAIN();
