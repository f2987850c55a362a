#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mmot/errors.hpp"
#include "mmot/evaluation.hpp"
#include "mmot/ground_truth.hpp"
#include "mmot/map_io.hpp"
#include "mmot/number_format.hpp"
#include "mmot/run.hpp"
#include "mmot/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBadContent = 3;
constexpr int kExitIo = 4;

struct SimulateArgs {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  std::optional<std::string> sensors;
  std::string out_map = "map.mmot";
  std::string out_report = "report.txt";
  std::string diagnostics_path;
  bool verbose = false;
};

struct CompareArgs {
  std::string reference_path;
  std::string map_path;
  std::string out_report;
};

struct CurvesArgs {
  std::string out_path;
  std::string scenario_path;
  double d_min = 0.0;
  double d_max = 4.0;
  double step = 0.01;
};

struct GroundTruthArgs {
  std::string scenario_path;
  std::string out_path;
};

struct InfoArgs {
  std::string map_path;
};

mmot::ScenarioConfig loadScenario(const std::string& path) {
  mmot::ScenarioConfig config = mmot::readScenarioFile(path);
  mmot::validateScenario(config);
  return config;
}

void writeBytesAtomic(const std::filesystem::path& path,
                      const std::vector<std::uint8_t>& bytes) {
  mmot::writeFileAtomic(
      path, std::string_view(reinterpret_cast<const char*>(bytes.data()),
                             bytes.size()));
}

int runSimulate(const SimulateArgs& args) {
  mmot::ScenarioConfig config = loadScenario(args.scenario_path);
  if (args.seed) {
    config.seed = *args.seed;
  }
  if (args.duration) {
    config.duration = *args.duration;
  }
  if (args.sensors) {
    config.sensors = *mmot::parseSensorSelection(*args.sensors);
  }
  mmot::validateScenario(config);

  std::ofstream diagnostics_file;
  std::ostream* diagnostics = nullptr;
  if (!args.diagnostics_path.empty()) {
    diagnostics_file.open(args.diagnostics_path,
                          std::ios::binary | std::ios::trunc);
    if (!diagnostics_file) {
      throw mmot::IoError("cannot open diagnostics file: " +
                          args.diagnostics_path);
    }
    diagnostics = &diagnostics_file;
  } else if (args.verbose) {
    diagnostics = &std::cerr;
  }

  const mmot::RunResult result =
      mmot::runScenarioToFiles(config, args.out_map, args.out_report,
                               diagnostics);
  if (diagnostics_file.is_open()) {
    diagnostics_file.close();
    if (!diagnostics_file) {
      throw mmot::IoError("cannot write diagnostics file: " +
                          args.diagnostics_path);
    }
  }

  std::cout << "scenario " << config.id << " seed " << config.seed << ": "
            << result.totals.ticks << " ticks, " << result.totals.depth_frames
            << " depth frames, " << result.map.nodeCount()
            << " mapped voxels\n"
            << "map:    " << args.out_map << "\n"
            << "report: " << args.out_report << "\n";
  if (args.verbose) {
    std::cerr << "occupied " << result.report.occupied << " missed "
              << result.report.missed << " incorrect "
              << result.report.incorrect << " free " << result.report.free
              << "\n";
  }
  return kExitOk;
}

int runCompare(const CompareArgs& args) {
  const mmot::OccupancyOctree reference =
      mmot::readMapFile(args.reference_path);
  const mmot::OccupancyOctree generated = mmot::readMapFile(args.map_path);
  const mmot::GroundTruthMap gt = mmot::groundTruthFromOctree(reference);
  const mmot::ComparisonReport report = mmot::compareMaps(gt, generated);
  const std::string text = mmot::writeReportText(report);
  if (args.out_report.empty()) {
    std::cout << text;
  } else {
    mmot::writeFileAtomic(args.out_report, text);
    std::cout << "report: " << args.out_report << "\n";
  }
  return kExitOk;
}

int runCurves(const CurvesArgs& args) {
  const mmot::ScenarioConfig config = args.scenario_path.empty()
                                          ? mmot::ScenarioConfig{}
                                          : loadScenario(args.scenario_path);
  const std::vector<mmot::CurveRow> rows = mmot::emitUpdateCurves(
      mmot::buildProximityModel(config), mmot::buildDepthModel(config),
      args.d_min, args.d_max, args.step);
  const std::string csv = mmot::writeCurvesCsv(rows);
  if (args.out_path == "-") {
    std::cout << csv;
  } else {
    mmot::writeFileAtomic(args.out_path, csv);
    std::cout << "curves: " << args.out_path << " (" << rows.size()
              << " rows)\n";
  }
  return kExitOk;
}

int runGroundTruth(const GroundTruthArgs& args) {
  const mmot::ScenarioConfig config = loadScenario(args.scenario_path);
  const mmot::Scene scene = mmot::buildScene(config);
  const mmot::GroundTruthMap gt = mmot::buildGroundTruth(
      scene, config.resolution, mmot::effectiveViewpoints(config));
  writeBytesAtomic(args.out_path,
                   mmot::serializeMap(mmot::groundTruthToOctree(gt)));
  std::cout << "ground truth: " << args.out_path << " ("
            << gt.occupied.size() << " occupied, " << gt.known_free.size()
            << " known free, " << gt.interior.size() << " interior)\n";
  return kExitOk;
}

int runInfo(const InfoArgs& args) {
  const mmot::OccupancyOctree map = mmot::readMapFile(args.map_path);
  std::size_t occupied = 0;
  std::size_t free_count = 0;
  for (const auto& [key, node] : map.nodes()) {
    if (node.log_odds > map.occupancyThreshold()) {
      ++occupied;
    } else {
      ++free_count;
    }
  }
  std::cout << "file:                " << args.map_path << "\n"
            << "format:              MMOT v1\n"
            << "resolution:          " << mmot::formatDouble(map.resolution())
            << "\n"
            << "log-odds clamp:      [" << mmot::formatDouble(map.clampMin())
            << ", " << mmot::formatDouble(map.clampMax()) << "]\n"
            << "occupancy threshold: "
            << mmot::formatDouble(map.occupancyThreshold()) << "\n"
            << "nodes:               " << map.nodeCount() << " (" << occupied
            << " occupied, " << free_count << " free)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-sensor occupancy mapping tool"};
  app.require_subcommand(1);

  SimulateArgs simulate_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "simulate a scenario and write map and report artifacts");
  simulate
      ->add_option("scenario,--scenario", simulate_args.scenario_path,
                   "scenario file")
      ->required();
  simulate->add_option("--seed", simulate_args.seed,
                       "override the scenario seed");
  simulate
      ->add_option("--duration", simulate_args.duration,
                   "override the run duration in seconds")
      ->check(CLI::PositiveNumber);
  simulate
      ->add_option("--sensors", simulate_args.sensors,
                   "sensor selection: depth, proximity or fused")
      ->check(CLI::IsMember({"depth", "proximity", "fused"}));
  simulate
      ->add_option("--out-map", simulate_args.out_map, "map artifact path")
      ->capture_default_str();
  simulate
      ->add_option("--out-report", simulate_args.out_report,
                   "report artifact path")
      ->capture_default_str();
  simulate->add_option("--diagnostics", simulate_args.diagnostics_path,
                       "write per-tick diagnostics records to this file");
  simulate->add_flag("--verbose", simulate_args.verbose,
                     "per-tick diagnostics and tallies on stderr");

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand(
      "compare", "compare a generated map against a reference map");
  compare->add_option("reference", compare_args.reference_path,
                      "reference map file")
      ->required();
  compare->add_option("map", compare_args.map_path, "generated map file")
      ->required();
  compare->add_option("--out-report", compare_args.out_report,
                      "write the report here instead of stdout");

  CurvesArgs curves_args;
  CLI::App* curves = app.add_subcommand(
      "curves", "tabulate single-hit occupancy probability against distance");
  curves->add_option("out", curves_args.out_path, "output csv path, - for stdout")
      ->required();
  curves->add_option("--scenario", curves_args.scenario_path,
                     "take sensor parameters from this scenario file");
  curves->add_option("--min", curves_args.d_min, "first distance")
      ->capture_default_str();
  curves->add_option("--max", curves_args.d_max, "last distance")
      ->capture_default_str();
  curves->add_option("--step", curves_args.step, "distance step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  GroundTruthArgs gt_args;
  CLI::App* groundtruth = app.add_subcommand(
      "groundtruth", "voxelize a scenario's analytic reference map");
  groundtruth
      ->add_option("scenario,--scenario", gt_args.scenario_path,
                   "scenario file")
      ->required();
  groundtruth->add_option("out", gt_args.out_path, "output map path")
      ->required();

  InfoArgs info_args;
  CLI::App* info =
      app.add_subcommand("info", "print the header of a map file");
  info->add_option("map", info_args.map_path, "map file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      return runSimulate(simulate_args);
    }
    if (compare->parsed()) {
      return runCompare(compare_args);
    }
    if (curves->parsed()) {
      return runCurves(curves_args);
    }
    if (groundtruth->parsed()) {
      return runGroundTruth(gt_args);
    }
    if (info->parsed()) {
      return runInfo(info_args);
    }
  } catch (const mmot::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const mmot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadContent;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitUnexpected;
  }
  return kExitUsage;
}
