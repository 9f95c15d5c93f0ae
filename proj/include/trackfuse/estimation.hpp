#pragma once

#include <Eigen/Dense>
#include <optional>

#include "trackfuse/core.hpp"

namespace trackfuse {

enum class ModelKind { kConstantVelocity, kConstantAcceleration };

/// Motion model for the linear filter. dt is the time step per frame and
/// must be positive; the toolkit runs everything at dt = 1.
struct MotionModel {
  ModelKind kind = ModelKind::kConstantVelocity;
  double dt = 1.0;
};

/// State dimension: 4 for constant velocity, 6 for constant acceleration.
int state_dim(const MotionModel& model);

/// Process/measurement/initial-covariance multipliers applied to identity
/// matrices. All must be positive.
struct NoiseConfig {
  double q_scale = 1.0;
  double r_scale = 1.0;
  double p0_scale = 1.0;
};

/// Kalman state for one track. State vector order is [x, y, vx, vy] for the
/// constant-velocity model and [x, y, vx, vy, ax, ay] for constant
/// acceleration. `misses` counts consecutive predict-only steps.
struct FilterState {
  Eigen::VectorXd x;
  Eigen::MatrixXd P;
  MotionModel model;
  NoiseConfig noise;
  int misses = 0;
  int frame = 0;
};

/// State transition matrix F. For constant velocity at dt = 1 this is
/// exactly [[1,0,1,0],[0,1,0,1],[0,0,1,0],[0,0,0,1]]; the constant
/// acceleration rows additionally carry the dt^2/2 terms.
Eigen::MatrixXd transition_matrix(const MotionModel& model);

/// Observation matrix H extracting (x, y) from the state: 2x4 or 2x6.
Eigen::MatrixXd observation_matrix(const MotionModel& model);

/// Position components = detection centroid, derivatives zero,
/// P = p0_scale * identity, misses = 0, frame = detection frame.
FilterState init_filter(const Detection& d, const MotionModel& model,
                        const NoiseConfig& noise);

/// Prediction step: x' = F x, P' = F P F^T + q_scale I, frame + 1.
/// P is re-symmetrized after the product.
FilterState predict(const FilterState& s);

/// Correction step against a post-predict state. Throws SingularInnovation
/// when the innovation covariance is not invertible at tolerance 1e-12
/// (cannot occur with r_scale > 0). Resets misses to 0.
FilterState update(const FilterState& s, const Point2& z);

/// One frame advance: predict then correct when a measurement is present,
/// prediction only (misses incremented) when it is not.
FilterState step(const FilterState& s, const std::optional<Point2>& z);

/// Estimated position: the first two state components.
Point2 position(const FilterState& s);

/// Trace of the 2x2 position covariance block, the TrackPoint spread proxy.
double position_spread(const FilterState& s);

}  // namespace trackfuse
