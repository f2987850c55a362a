#include "mmot/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mmot/errors.hpp"
#include "mmot/log_odds.hpp"
#include "mmot/number_format.hpp"

namespace mmot {

ComparisonReport compareMaps(const GroundTruthMap& gt,
                             const OccupancyOctree& generated) {
  if (std::abs(gt.resolution - generated.resolution()) > 1e-12) {
    throw ComparisonError("resolution mismatch: reference " +
                          formatDouble(gt.resolution) + ", map " +
                          formatDouble(generated.resolution()));
  }
  ComparisonReport report;
  report.resolution = gt.resolution;

  for (const VoxelKey& key : gt.occupied) {
    const OccupancyState state = generated.occupancyState(key);
    if (state == OccupancyState::kOccupied) {
      ++report.occupied;
    } else {
      ++report.missed;
      if (state == OccupancyState::kUnknown) {
        ++report.missed_unknown;
      } else {
        ++report.missed_free;
      }
    }
  }
  for (const VoxelKey& key : gt.known_free) {
    if (generated.occupancyState(key) == OccupancyState::kFree) {
      ++report.free;
    }
  }
  for (const auto& [key, node] : generated.nodes()) {
    if (generated.occupancyState(key) != OccupancyState::kOccupied) {
      continue;
    }
    if (gt.occupied.contains(key) || gt.interior.contains(key)) {
      continue;
    }
    if (!voxelInWorkspace(key, gt.resolution, gt.workspace)) {
      continue;
    }
    ++report.incorrect;
  }
  return report;
}

std::string writeReportText(const ComparisonReport& report) {
  std::ostringstream out;
  out << "# mmot-report v1\n";
  out << "# scenario " << (report.scenario_id.empty() ? "-" : report.scenario_id)
      << "\n";
  out << "# seed " << report.seed << "\n";
  out << "# resolution " << formatDouble(report.resolution) << "\n";
  out << "# duration " << formatDouble(report.duration) << "\n";
  out << "occupied " << report.occupied << "\n";
  out << "free " << report.free << "\n";
  out << "missed " << report.missed << "\n";
  out << "missed_unknown " << report.missed_unknown << "\n";
  out << "missed_free " << report.missed_free << "\n";
  out << "incorrect " << report.incorrect << "\n";
  return out.str();
}

std::vector<CurveRow> emitUpdateCurves(const SensorModel& proximity,
                                       const SensorModel& depth, double d_min,
                                       double d_max, double step) {
  if (proximity.kind() != SensorKind::kProximity ||
      depth.kind() != SensorKind::kDepthCamera) {
    throw ConfigError("curve emission needs one model of each class");
  }
  if (!std::isfinite(d_min) || !std::isfinite(d_max) || !(d_min < d_max)) {
    throw InvalidInputError("need d_min < d_max");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidInputError("step must be positive and finite");
  }
  if (d_min < 0.0 ||
      d_max > std::min(proximity.maxRange(), depth.maxRange())) {
    throw InvalidInputError(
        "distance range must stay within both operational ranges");
  }

  std::vector<double> distances;
  for (std::size_t k = 0;; ++k) {
    const double d = d_min + static_cast<double>(k) * step;
    if (d > d_max + 1e-12) {
      break;
    }
    distances.push_back(std::min(d, d_max));
  }
  for (double boundary : {proximity.minRange(), depth.minRange()}) {
    if (boundary < d_min || boundary > d_max) {
      continue;
    }
    const bool present =
        std::any_of(distances.begin(), distances.end(),
                    [&](double d) { return std::abs(d - boundary) <= 1e-12; });
    if (!present) {
      distances.push_back(boundary);
    }
  }
  std::sort(distances.begin(), distances.end());

  std::vector<CurveRow> rows;
  rows.reserve(distances.size());
  for (double d : distances) {
    rows.push_back({d, probabilityFromLogOdds(proximity.hitLogOdds(d)),
                    probabilityFromLogOdds(depth.hitLogOdds(d))});
  }
  return rows;
}

std::string writeCurvesCsv(const std::vector<CurveRow>& rows) {
  std::ostringstream out;
  out << "distance,p_prox,p_depth\n";
  for (const CurveRow& row : rows) {
    out << formatDouble(row.distance) << "," << formatDouble(row.p_prox) << ","
        << formatDouble(row.p_depth) << "\n";
  }
  return out.str();
}

}  // namespace mmot
