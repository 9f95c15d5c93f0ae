#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trackfuse/core.hpp"
#include "trackfuse/estimation.hpp"

namespace trackfuse {

/// Initial truth state; acceleration is ignored under the constant-velocity
/// model.
struct TruthInit {
  Point2 position{0.0, 0.0};
  Point2 velocity{0.0, 0.0};
  Point2 acceleration{0.0, 0.0};
};

/// Detection dropout for one camera: an independent per-frame probability
/// and/or explicit occlusion windows [start, end], ends inclusive.
struct MissSpec {
  double probability = 0.0;
  std::vector<std::pair<int, int>> windows;
};

/// One synthetic camera: projective map from the base plane into its image
/// plane, isotropic Gaussian centroid noise, and a miss specification.
struct CameraModel {
  Homography base_to_image = Homography::identity();
  double noise_sigma = 0.0;
  MissSpec miss;
};

struct ScenarioConfig {
  int frames = 2;
  MotionModel truth_model;
  TruthInit truth;
  std::map<std::string, CameraModel> cameras;
  std::uint64_t seed = 0;
  // Emitted bounding boxes carry constant extents; only centroids matter
  // downstream.
  double bbox_w = 20.0;
  double bbox_h = 40.0;
};

/// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& cfg);

struct ScenarioOutput {
  Trajectory gt_base;                               // one point per frame
  std::map<std::string, Trajectory> gt_per_camera;  // projected, no noise
  std::map<std::string, std::vector<Detection>> detections;
};

/// Generates ground truth by exact per-frame iteration of the motion
/// equations, projects it into each camera, adds per-axis Gaussian noise and
/// removes missed frames.
///
/// The seed-to-stream mapping is fixed: a std::mt19937_64 seeded with
/// `seed`; uniforms are (next() >> 11) * 2^-53; for each camera in ascending
/// id order and each frame in order, two uniforms feed one Box-Muller pair
/// (noise x, y) and a third is the miss draw (miss when u < probability).
/// All three are consumed for every camera-frame, so changing sigma or miss
/// settings does not shift the stream.
ScenarioOutput simulate(const ScenarioConfig& cfg);

}  // namespace trackfuse
