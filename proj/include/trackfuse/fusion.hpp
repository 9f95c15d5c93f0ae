#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "trackfuse/core.hpp"

namespace trackfuse {

/// Multi-camera fusion parameters. An empty weight map means equal weights
/// over whichever cameras are present; a non-empty map must cover every
/// fused camera and sum to 1 within 1e-9. A camera is excluded from fusion
/// once its consecutive-miss count reaches miss_threshold.
struct FusionConfig {
  std::map<std::string, double> weights;
  int miss_threshold = 3;
  int score_window = 10;
};

/// Throws ConfigError naming the offending key/camera.
void validate(const FusionConfig& cfg);

/// One camera's filtered, base-plane-projected sample for one frame.
struct CameraSample {
  std::string camera;
  Point2 point;
  bool updated = true;
  int misses = 0;
  double spread = 0.0;
};

/// Convex combination of the healthy cameras' points. Cameras at or past the
/// miss threshold are excluded and the surviving weights renormalized; a
/// lone surviving camera's point is returned verbatim (full weight). Throws
/// NoHealthySource when every camera is excluded.
Point2 fuse_weighted(std::span<const CameraSample> samples, const FusionConfig& cfg);

/// Trailing-window health score for one camera.
struct CameraScore {
  double score = 0.0;        // fraction of updated samples, in [0, 1]
  double mean_spread = 0.0;  // tie-break: smaller wins
};

/// score = fraction of updated samples in the window; mean_spread carries
/// the tie-break. The window must be non-empty.
CameraScore camera_score(std::span<const CameraSample> window);

struct WtaChoice {
  Point2 point;
  std::string camera;
};

/// Returns the highest-scoring healthy camera's point, bit-identical, never
/// a blend. Ties break by smaller mean spread, then camera id order. Throws
/// NoHealthySource when every camera is excluded by the miss threshold.
WtaChoice fuse_wta(std::span<const CameraSample> samples,
                   const std::map<std::string, CameraScore>& scores,
                   const FusionConfig& cfg);

/// Unweighted mean when several ground-truth points are present,
/// pass-through when exactly one is. Throws NoSource when none are.
Point2 fuse_ground_truth(std::span<const Point2> points);

/// Whole-run fusion of per-camera base-plane trajectories, frame by frame.
/// Frames where every camera is excluded carry the previous fused point
/// forward flagged predicted; leading frames with no fusable source are
/// skipped. wta_winner records the selected camera for fresh WTA frames.
struct FusedRun {
  Trajectory weighted;
  Trajectory wta;
  std::map<int, std::string> wta_winner;
};

FusedRun fuse_sequences(const std::map<std::string, Trajectory>& per_camera,
                        const FusionConfig& cfg);

}  // namespace trackfuse
