#include "trackfuse/core.hpp"

#include <cmath>
#include <utility>

namespace trackfuse {

namespace {
constexpr double kSingularTol = 1e-12;   // double-precision noise floor
constexpr double kHorizonTol = 1e-12;
}  // namespace

bool is_finite(const Point2& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

double squared_distance(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(const Point2& a, const Point2& b) {
  return std::sqrt(squared_distance(a, b));
}

Point2 centroid(const BBox& b) {
  return Point2{b.cx, b.cy};
}

void validate_trajectory(const Trajectory& t, const std::string& what) {
  for (size_t i = 1; i < t.size(); ++i) {
    if (t[i].frame <= t[i - 1].frame) {
      throw IoError(what + ": frames not strictly increasing at index " +
                    std::to_string(i) + " (frame " + std::to_string(t[i].frame) +
                    " after " + std::to_string(t[i - 1].frame) + ")");
    }
  }
}

Track::Track(int id, std::string camera) : id_(id), camera_(std::move(camera)) {}

Track::Track(int id, std::string camera, std::vector<TrackPoint> points)
    : id_(id), camera_(std::move(camera)) {
  for (const auto& p : points) append(p);
}

void Track::append(const TrackPoint& p) {
  if (!points_.empty() && p.frame != points_.back().frame + 1) {
    throw std::invalid_argument(
        "Track: frame " + std::to_string(p.frame) + " does not follow " +
        std::to_string(points_.back().frame) + " consecutively");
  }
  points_.push_back(p);
}

Homography Homography::identity() {
  return validate_homography(Eigen::Matrix3d::Identity());
}

std::array<double, 9> Homography::row_major() const {
  std::array<double, 9> out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[static_cast<size_t>(3 * r + c)] = m_(r, c);
  return out;
}

Homography validate_homography(const Eigen::Matrix3d& m) {
  if (!m.allFinite()) throw SingularHomography("homography has non-finite entries");
  const double det = m.determinant();
  if (std::abs(det) <= kSingularTol) {
    throw SingularHomography("homography determinant magnitude " +
                             std::to_string(std::abs(det)) + " <= 1e-12");
  }
  return Homography(m);
}

Homography validate_homography(const std::array<double, 9>& row_major) {
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = row_major[static_cast<size_t>(3 * r + c)];
  return validate_homography(m);
}

Homography inverse(const Homography& h) {
  return validate_homography(Eigen::Matrix3d(h.matrix().inverse()));
}

Point2 project(const Point2& p, const Homography& h) {
  const Eigen::Matrix3d& m = h.matrix();
  const double w = m(2, 0) * p.x + m(2, 1) * p.y + m(2, 2);
  if (std::abs(w) < kHorizonTol) {
    throw DegenerateProjection("point (" + std::to_string(p.x) + ", " +
                               std::to_string(p.y) + ") lies on the horizon of the map");
  }
  return Point2{(m(0, 0) * p.x + m(0, 1) * p.y + m(0, 2)) / w,
                (m(1, 0) * p.x + m(1, 1) * p.y + m(1, 2)) / w};
}

}  // namespace trackfuse
