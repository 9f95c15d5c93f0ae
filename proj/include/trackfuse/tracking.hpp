#pragma once

#include <span>
#include <vector>

#include "trackfuse/core.hpp"
#include "trackfuse/estimation.hpp"

namespace trackfuse {

/// Per-camera tracker parameters. gate_radius is the association distance
/// cutoff in pixels; a track is killed once its consecutive-miss count would
/// exceed max_misses.
struct TrackerConfig {
  MotionModel model;
  NoiseConfig noise;
  double gate_radius = 50.0;
  int max_misses = 30;
};

/// A track still being extended: its accumulated output plus filter state.
struct LiveTrack {
  Track track;
  FilterState filter;
};

/// Greedy nearest-neighbor assignment between predicted track positions and
/// detection centroids of one frame.
struct Association {
  /// detection index per track, -1 when the track got nothing this frame.
  std::vector<int> detection_for_track;
  /// detections no track consumed, in input order; these birth new tracks.
  std::vector<int> unassigned_detections;
};

/// Pairs tracks and detections in ascending distance order, skipping pairs
/// beyond the gate. Tracks must be given in ascending id order: ties in
/// distance go to the lower index on both sides.
Association associate(std::span<const Point2> predicted,
                      std::span<const Point2> detections, double gate_radius);

/// Runs the full per-frame cycle (predict, associate, correct or carry a
/// predict-only miss, birth, kill) over a frame-sorted single-camera stream.
/// Throws UnsortedInput when the frame index decreases.
///
/// end_frame extends the run predict-only past the last detection (up to
/// max_misses), so cameras whose stream ends early still cover the scene's
/// frame range; end_frame < last detection frame means no extension.
std::vector<Track> run_tracker(std::span<const Detection> detections,
                               const TrackerConfig& cfg, int end_frame = -1);

}  // namespace trackfuse
