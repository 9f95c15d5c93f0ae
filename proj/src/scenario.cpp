#include "trackfuse/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace trackfuse {

void validate(const ScenarioConfig& cfg) {
  if (cfg.frames < 2)
    throw ConfigError("frames must be >= 2, got " + std::to_string(cfg.frames));
  if (!(cfg.truth_model.dt > 0.0))
    throw ConfigError("truth.dt must be > 0, got " + std::to_string(cfg.truth_model.dt));
  if (!is_finite(cfg.truth.position) || !is_finite(cfg.truth.velocity) ||
      !is_finite(cfg.truth.acceleration))
    throw ConfigError("truth initial state must be finite");
  if (!(cfg.bbox_w > 0.0) || !(cfg.bbox_h > 0.0))
    throw ConfigError("bbox.w and bbox.h must be > 0");
  for (const auto& [camera, model] : cfg.cameras) {
    if (!(model.noise_sigma >= 0.0))
      throw ConfigError("camera." + camera + ".sigma must be >= 0, got " +
                        std::to_string(model.noise_sigma));
    if (!(model.miss.probability >= 0.0 && model.miss.probability < 1.0))
      throw ConfigError("camera." + camera + ".miss_prob must lie in [0,1), got " +
                        std::to_string(model.miss.probability));
    for (const auto& [start, end] : model.miss.windows) {
      if (start < 0 || end >= cfg.frames || start > end)
        throw ConfigError("camera." + camera + ".occlusions window [" +
                          std::to_string(start) + "," + std::to_string(end) +
                          "] outside [0," + std::to_string(cfg.frames - 1) + "]");
    }
  }
}

namespace {

class NoiseStream {
public:
  explicit NoiseStream(std::uint64_t seed) : rng_(seed) {}

  double uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  // Box-Muller pair from two uniforms.
  std::pair<double, double> normal_pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

private:
  std::mt19937_64 rng_;
};

bool in_window(const MissSpec& miss, int frame) {
  for (const auto& [start, end] : miss.windows)
    if (frame >= start && frame <= end) return true;
  return false;
}

}  // namespace

ScenarioOutput simulate(const ScenarioConfig& cfg) {
  validate(cfg);

  ScenarioOutput out;
  out.gt_base.reserve(static_cast<size_t>(cfg.frames));
  {
    const double dt = cfg.truth_model.dt;
    const bool accelerated = cfg.truth_model.kind == ModelKind::kConstantAcceleration;
    Point2 pos = cfg.truth.position;
    Point2 vel = cfg.truth.velocity;
    const Point2 acc = accelerated ? cfg.truth.acceleration : Point2{0.0, 0.0};
    const double half_dt2 = 0.5 * dt * dt;
    for (int frame = 0; frame < cfg.frames; ++frame) {
      out.gt_base.push_back({frame, pos, true, 0.0});
      pos.x += vel.x * dt + acc.x * half_dt2;
      pos.y += vel.y * dt + acc.y * half_dt2;
      vel.x += acc.x * dt;
      vel.y += acc.y * dt;
    }
  }

  NoiseStream noise(cfg.seed);
  for (const auto& [camera, model] : cfg.cameras) {
    Trajectory gt_cam;
    std::vector<Detection> dets;
    gt_cam.reserve(out.gt_base.size());
    for (const TrackPoint& gt : out.gt_base) {
      const Point2 projected = project(gt.point, model.base_to_image);
      gt_cam.push_back({gt.frame, projected, true, 0.0});

      const auto [nx, ny] = noise.normal_pair();
      const double miss_draw = noise.uniform();
      const bool missed = in_window(model.miss, gt.frame) ||
                          (model.miss.probability > 0.0 &&
                           miss_draw < model.miss.probability);
      if (missed) continue;
      Detection d;
      d.frame = gt.frame;
      d.camera = camera;
      d.bbox = BBox{projected.x + model.noise_sigma * nx,
                    projected.y + model.noise_sigma * ny, cfg.bbox_w, cfg.bbox_h};
      dets.push_back(std::move(d));
    }
    out.gt_per_camera.emplace(camera, std::move(gt_cam));
    out.detections.emplace(camera, std::move(dets));
  }
  return out;
}

}  // namespace trackfuse
