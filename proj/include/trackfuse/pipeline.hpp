#pragma once

#include <filesystem>
#include <vector>

#include "trackfuse/config.hpp"
#include "trackfuse/csv.hpp"
#include "trackfuse/evaluation.hpp"

namespace trackfuse {

/// Removes every file registered with track() unless dismiss() was called:
/// a failed command never leaves partial outputs behind.
class OutputGuard {
public:
  OutputGuard() = default;
  ~OutputGuard();
  OutputGuard(const OutputGuard&) = delete;
  OutputGuard& operator=(const OutputGuard&) = delete;

  void track(const std::filesystem::path& path);
  void dismiss();
  const std::vector<std::filesystem::path>& written() const { return written_; }

private:
  std::vector<std::filesystem::path> written_;
  bool dismissed_ = false;
};

/// Writes gt.csv, detections_<camera>.csv and a ready-to-run run.cfg into
/// out_dir. Returns the paths written, in write order.
std::vector<std::filesystem::path> run_simulate(const ScenarioFile& file,
                                                const std::filesystem::path& out_dir);

struct PipelineArtifacts {
  StagedInput staged;
  std::map<std::string, std::vector<Detection>> detections;  // ingested, sorted
  MseReport report;
};

/// The in-memory chain: ingest, per-camera tracking, base-plane projection,
/// both fusion rules, staged MSE report. Subsets of the stages can be kept
/// with `stages` (raw, filtered, weighted, wta); empty means all.
PipelineArtifacts run_pipeline_chain(const RunConfig& cfg,
                                     const std::vector<std::string>& stages = {});

/// Full pipeline command: chain plus trajectory CSVs, report.csv,
/// report.txt and errors_per_frame.csv in out_dir.
std::vector<std::filesystem::path> run_pipeline(
    const RunConfig& cfg, const std::filesystem::path& out_dir,
    const std::vector<std::string>& stages = {});

/// Tracking only: per-camera filtered trajectory CSVs (base plane).
std::vector<std::filesystem::path> run_track(const RunConfig& cfg,
                                             const std::filesystem::path& out_dir);

/// Fusion only: reads per-camera trajectory CSVs and writes
/// fused_weighted.csv / fused_wta.csv.
std::vector<std::filesystem::path> run_fuse(
    const std::map<std::string, std::filesystem::path>& trajectories,
    const FusionConfig& fusion, const std::filesystem::path& out_dir);

/// Single-stage evaluation of two files; both accept the trajectory or the
/// base ground-truth schema.
MseStats run_evaluate(const std::filesystem::path& estimate,
                      const std::filesystem::path& ground_truth);

/// Projects a per-camera (image-plane) trajectory into the base plane.
Trajectory project_trajectory(const Trajectory& t, const Homography& image_to_base);

/// The camera's principal track: most points, ties to the lowest id.
const Track* primary_track(const std::vector<Track>& tracks);

}  // namespace trackfuse
