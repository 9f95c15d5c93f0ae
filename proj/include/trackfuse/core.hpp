#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "trackfuse/errors.hpp"

namespace trackfuse {

/// A 2D point, in image-plane pixels or base-plane units after projection.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

bool is_finite(const Point2& p);
double squared_distance(const Point2& a, const Point2& b);
double distance(const Point2& a, const Point2& b);

/// Axis-aligned bounding box, centroid + extents. w, h must be positive.
struct BBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 1.0;
  double h = 1.0;
};

/// One per-frame bounding-box measurement from one camera.
struct Detection {
  int frame = 0;
  std::string camera;
  BBox bbox;
  std::optional<double> confidence;
};

/// Geometric center of a bounding box.
Point2 centroid(const BBox& b);

/// One sample of an estimated trajectory. `updated` is true when the point
/// was corrected with a measurement, false when it is predict-only.
/// `spread` is the trace of the position covariance block.
struct TrackPoint {
  int frame = 0;
  Point2 point;
  bool updated = true;
  double spread = 0.0;
};

/// Frame-ordered samples with gaps allowed; frames strictly increasing.
using Trajectory = std::vector<TrackPoint>;

/// Throws IoError naming the offending index if frames are not strictly
/// increasing.
void validate_trajectory(const Trajectory& t, const std::string& what);

/// A gap-free track from one camera: consecutive frames, no holes.
/// Construction and append enforce the frame invariant.
class Track {
public:
  Track(int id, std::string camera);
  Track(int id, std::string camera, std::vector<TrackPoint> points);

  /// Appends the next sample; its frame must be last frame + 1 (any frame
  /// for the first point). Violation throws std::invalid_argument.
  void append(const TrackPoint& p);

  int id() const { return id_; }
  const std::string& camera() const { return camera_; }
  const std::vector<TrackPoint>& points() const { return points_; }
  bool empty() const { return points_.empty(); }
  size_t size() const { return points_.size(); }

private:
  int id_ = 0;
  std::string camera_;
  std::vector<TrackPoint> points_;
};

/// Invertible 3x3 projective map from camera image plane to base plane.
/// Only obtainable through validate_homography, so the invertibility
/// invariant always holds.
class Homography {
public:
  static Homography identity();

  const Eigen::Matrix3d& matrix() const { return m_; }

  /// Row-major 9-element view, for config files and bindings.
  std::array<double, 9> row_major() const;

private:
  explicit Homography(const Eigen::Matrix3d& m) : m_(m) {}
  friend Homography validate_homography(const Eigen::Matrix3d& m);

  Eigen::Matrix3d m_;
};

/// Determinant magnitude must exceed 1e-12; otherwise SingularHomography.
Homography validate_homography(const Eigen::Matrix3d& m);
Homography validate_homography(const std::array<double, 9>& row_major);

Homography inverse(const Homography& h);

/// Applies the projective map: throws DegenerateProjection when the
/// homogeneous w-component magnitude falls below 1e-12.
Point2 project(const Point2& p, const Homography& h);

}  // namespace trackfuse
