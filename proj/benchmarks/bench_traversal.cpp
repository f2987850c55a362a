#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mmot/geometry.hpp"
#include "mmot/ray_traversal.hpp"
#include "mmot/voxel_key.hpp"

namespace {

using mmot::Point3;
using mmot::VoxelKey;

std::vector<std::pair<Point3, Point3>> makeRays(std::size_t count,
                                                double span) {
  std::mt19937_64 rng(9001);
  std::uniform_real_distribution<double> coord(-span, span);
  std::vector<std::pair<Point3, Point3>> rays;
  rays.reserve(count);
  while (rays.size() < count) {
    const Point3 a{coord(rng), coord(rng), coord(rng)};
    const Point3 b{coord(rng), coord(rng), coord(rng)};
    if (!(a == b)) {
      rays.emplace_back(a, b);
    }
  }
  return rays;
}

void BM_TraverseRayCallback(benchmark::State& state) {
  const double resolution = 0.04;
  const auto rays = makeRays(256, state.range(0) * 0.01);
  std::size_t n = 0;
  std::size_t visited = 0;
  for (auto _ : state) {
    const auto& [a, b] = rays[n++ & 255];
    mmot::traverseRay(a, b, resolution,
                      [&visited](const VoxelKey&) { ++visited; });
  }
  benchmark::DoNotOptimize(visited);
  state.SetItemsProcessed(static_cast<std::int64_t>(visited));
}
BENCHMARK(BM_TraverseRayCallback)->Arg(50)->Arg(100)->Arg(200);

void BM_TraverseRayCollect(benchmark::State& state) {
  const double resolution = 0.04;
  const auto rays = makeRays(256, 1.0);
  std::size_t n = 0;
  for (auto _ : state) {
    const auto& [a, b] = rays[n++ & 255];
    benchmark::DoNotOptimize(mmot::traverseRay(a, b, resolution));
  }
}
BENCHMARK(BM_TraverseRayCollect);

void BM_KeyForPoint(benchmark::State& state) {
  const double resolution = 0.04;
  double x = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mmot::keyForPoint({x, 0.5 * x, -0.25 * x}, resolution));
    x += 1e-4;
    if (x > 1.0) x = -1.0;
  }
}
BENCHMARK(BM_KeyForPoint);

}  // namespace

BENCHMARK_MAIN();
