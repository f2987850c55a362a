#include "mmot/run.hpp"

#include <fstream>
#include <string>
#include <system_error>
#include <utility>

#include "mmot/errors.hpp"
#include "mmot/map_io.hpp"
#include "mmot/number_format.hpp"
#include "mmot/scan_fusion.hpp"
#include "mmot/simulator.hpp"

namespace mmot {

RunResult runScenario(const ScenarioConfig& config,
                      std::ostream* diagnostics) {
  validateScenario(config);
  const Scene scene = buildScene(config);
  const SensorModel prox_model = buildProximityModel(config);
  const SensorModel depth_model = buildDepthModel(config);
  const Simulator simulator(scene, buildRig(config), buildTrajectory(config),
                            config.seed, prox_model, depth_model,
                            simulatorOptions(config));
  MapIntegrator integrator(buildOctree(config), depth_model, prox_model);

  RunResult result;
  const std::int64_t ticks = simulator.tickCount();
  for (std::int64_t tick = 0; tick < ticks; ++tick) {
    const ScanBatch batch = simulator.simulateTick(tick);
    const IntegrationStats stats = integrator.integrateScan(batch);
    result.totals.ticks += 1;
    result.totals.depth_frames += batch.depth_frame.has_value() ? 1 : 0;
    result.totals.hit_updates += stats.hit_updates;
    result.totals.miss_updates += stats.miss_updates;
    if (diagnostics != nullptr) {
      *diagnostics << "{\"tick\":" << tick << ",\"time\":"
                   << formatDouble(simulator.tickTime(tick))
                   << ",\"nodes_touched\":" << stats.nodes_touched
                   << ",\"hit_updates\":" << stats.hit_updates
                   << ",\"miss_updates\":" << stats.miss_updates
                   << ",\"depth_frame\":"
                   << (batch.depth_frame.has_value() ? "true" : "false")
                   << "}\n";
    }
  }

  result.map = integrator.takeMap();
  result.ground_truth = buildGroundTruth(scene, config.resolution,
                                         effectiveViewpoints(config));
  result.report = compareMaps(result.ground_truth, result.map);
  result.report.scenario_id = config.id;
  result.report.seed = config.seed;
  result.report.duration = config.duration;
  return result;
}

void writeFileAtomic(const std::filesystem::path& path,
                     std::string_view contents) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + temp.string() + " for writing");
    }
    out.write(contents.data(),
              static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(temp, ec);
      throw IoError("failed writing " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(temp, ignored);
    throw IoError("failed moving " + temp.string() + " to " + path.string() +
                  ": " + ec.message());
  }
}

RunResult runScenarioToFiles(const ScenarioConfig& config,
                             const std::filesystem::path& map_path,
                             const std::filesystem::path& report_path,
                             std::ostream* diagnostics) {
  RunResult result = runScenario(config, diagnostics);
  const std::vector<std::uint8_t> map_bytes = serializeMap(result.map);
  writeFileAtomic(map_path,
                  std::string_view(
                      reinterpret_cast<const char*>(map_bytes.data()),
                      map_bytes.size()));
  writeFileAtomic(report_path, writeReportText(result.report));
  return result;
}

}  // namespace mmot
