#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "trackfuse/core.hpp"

namespace trackfuse {

/// Error statistics over the frames common to an estimate and the ground
/// truth. mse is the mean squared Euclidean distance; rmse and mean_dist are
/// emitted alongside so either reading of "MSE" can be compared.
struct MseStats {
  double mse = 0.0;
  double rmse = 0.0;
  double mean_dist = 0.0;
  int frames = 0;   // common frames compared
  int skipped = 0;  // frames present on only one side
};

/// Throws NoOverlap when the two frame sets are disjoint.
MseStats mse(const Trajectory& estimate, const Trajectory& ground_truth);

/// (frame, squared error) over the common frames, ascending.
std::vector<std::pair<int, double>> per_frame_squared_error(
    const Trajectory& estimate, const Trajectory& ground_truth);

struct StageResult {
  std::string stage;
  MseStats stats;
  std::vector<std::pair<int, double>> per_frame;  // empty unless requested
};

/// Per-stage error table in the fixed order raw, filtered, weighted, wta.
/// A stage with no data or no frame overlap is absent from `stages`, with a
/// note explaining why.
struct MseReport {
  std::vector<StageResult> stages;
  std::vector<std::string> notes;
};

struct StagedInput {
  std::map<std::string, Trajectory> raw;       // per camera, base plane
  std::map<std::string, Trajectory> filtered;  // per camera, base plane
  std::optional<Trajectory> fused_weighted;
  std::optional<Trajectory> fused_wta;
  Trajectory ground_truth;  // base plane
};

MseReport staged_report(const StagedInput& input, bool with_per_frame);

/// CSV rows `stage,mse,rmse,mean_dist,frames` at 17 significant digits.
void write_report_csv(std::ostream& os, const MseReport& report);

/// Human-readable aligned table, two decimals.
std::string render_report_table(const MseReport& report);

/// CSV rows `frame,stage,sq_error` for external plotting.
void write_per_frame_csv(std::ostream& os, const MseReport& report);

}  // namespace trackfuse
