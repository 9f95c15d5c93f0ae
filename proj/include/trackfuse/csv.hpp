#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "trackfuse/core.hpp"

namespace trackfuse {

/// Detection CSV, header `frame,camera,track,cx,cy,w,h,confidence`; `track`
/// and `confidence` may be empty. Rows are stable-sorted by frame at
/// ingestion; file order is preserved within a frame.
std::vector<Detection> read_detections(const std::filesystem::path& path);
void write_detections(const std::filesystem::path& path,
                      const std::vector<Detection>& detections);

/// Ground truth on the base plane: header `frame,x,y`, frames strictly
/// increasing.
Trajectory read_ground_truth_base(const std::filesystem::path& path);
void write_ground_truth_base(const std::filesystem::path& path, const Trajectory& gt);

/// Ground truth per camera, pre-projection: header `frame,camera,cx,cy`.
using PerCameraGroundTruth = std::map<std::string, std::vector<std::pair<int, Point2>>>;
PerCameraGroundTruth read_ground_truth_per_camera(const std::filesystem::path& path);

using GroundTruthFile = std::variant<Trajectory, PerCameraGroundTruth>;

/// Reads either ground-truth form, picked by header.
GroundTruthFile read_ground_truth(const std::filesystem::path& path);

/// Estimated trajectory CSV, header `frame,x,y,updated,spread`, frames
/// strictly increasing, 17-significant-digit doubles.
Trajectory read_trajectory(const std::filesystem::path& path);
void write_trajectory(const std::filesystem::path& path, const Trajectory& t);

/// Trajectory-shaped input for evaluation: accepts the trajectory schema or
/// the base ground-truth schema, picked by header.
Trajectory read_trajectory_like(const std::filesystem::path& path);

}  // namespace trackfuse
