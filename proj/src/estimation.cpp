#include "trackfuse/estimation.hpp"

#include <cmath>

namespace trackfuse {

int state_dim(const MotionModel& model) {
  return model.kind == ModelKind::kConstantVelocity ? 4 : 6;
}

Eigen::MatrixXd transition_matrix(const MotionModel& model) {
  const double dt = model.dt;
  if (model.kind == ModelKind::kConstantVelocity) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Identity(4, 4);
    f(0, 2) = dt;
    f(1, 3) = dt;
    return f;
  }
  const double half_dt2 = 0.5 * dt * dt;
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(6, 6);
  f(0, 2) = dt;
  f(1, 3) = dt;
  f(0, 4) = half_dt2;
  f(1, 5) = half_dt2;
  f(2, 4) = dt;
  f(3, 5) = dt;
  return f;
}

Eigen::MatrixXd observation_matrix(const MotionModel& model) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2, state_dim(model));
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  return h;
}

FilterState init_filter(const Detection& d, const MotionModel& model,
                        const NoiseConfig& noise) {
  const int n = state_dim(model);
  FilterState s;
  s.x = Eigen::VectorXd::Zero(n);
  const Point2 c = centroid(d.bbox);
  s.x(0) = c.x;
  s.x(1) = c.y;
  s.P = noise.p0_scale * Eigen::MatrixXd::Identity(n, n);
  s.model = model;
  s.noise = noise;
  s.misses = 0;
  s.frame = d.frame;
  return s;
}

namespace {

void symmetrize(Eigen::MatrixXd& p) {
  p = 0.5 * (p + p.transpose()).eval();
}

}  // namespace

FilterState predict(const FilterState& s) {
  const Eigen::MatrixXd f = transition_matrix(s.model);
  FilterState out = s;
  out.x = f * s.x;
  out.P = f * s.P * f.transpose() +
          s.noise.q_scale * Eigen::MatrixXd::Identity(s.x.size(), s.x.size());
  symmetrize(out.P);
  out.frame = s.frame + 1;
  return out;
}

FilterState update(const FilterState& s, const Point2& z) {
  const Eigen::MatrixXd h = observation_matrix(s.model);
  const Eigen::Vector2d innovation = Eigen::Vector2d(z.x, z.y) - h * s.x;
  Eigen::Matrix2d innovation_cov =
      h * s.P * h.transpose() + s.noise.r_scale * Eigen::Matrix2d::Identity();
  const double det = innovation_cov.determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-12) {
    throw SingularInnovation("innovation covariance determinant " +
                             std::to_string(det) + " not invertible");
  }
  const Eigen::MatrixXd gain = s.P * h.transpose() * innovation_cov.inverse();
  FilterState out = s;
  out.x = s.x + gain * innovation;
  const Eigen::MatrixXd identity =
      Eigen::MatrixXd::Identity(s.x.size(), s.x.size());
  out.P = (identity - gain * h) * s.P;
  symmetrize(out.P);
  out.misses = 0;
  return out;
}

FilterState step(const FilterState& s, const std::optional<Point2>& z) {
  FilterState out = predict(s);
  if (z.has_value()) return update(out, *z);
  out.misses = s.misses + 1;
  return out;
}

Point2 position(const FilterState& s) {
  return Point2{s.x(0), s.x(1)};
}

double position_spread(const FilterState& s) {
  return s.P(0, 0) + s.P(1, 1);
}

}  // namespace trackfuse
