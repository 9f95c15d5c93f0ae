#include "trackfuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace trackfuse {

void validate(const FusionConfig& cfg) {
  if (cfg.miss_threshold < 1)
    throw ConfigError("fusion.miss_threshold must be >= 1, got " +
                      std::to_string(cfg.miss_threshold));
  if (cfg.score_window < 1)
    throw ConfigError("fusion.score_window must be >= 1, got " +
                      std::to_string(cfg.score_window));
  if (cfg.weights.empty()) return;
  double sum = 0.0;
  for (const auto& [camera, w] : cfg.weights) {
    if (!(w >= 0.0 && w <= 1.0))
      throw ConfigError("fusion.weight." + camera + " must lie in [0,1], got " +
                        std::to_string(w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("fusion.weight.* must sum to 1 within 1e-9, got " +
                      std::to_string(sum));
}

namespace {

double weight_for(const FusionConfig& cfg, const std::string& camera,
                  size_t n_present) {
  if (cfg.weights.empty()) return 1.0 / static_cast<double>(n_present);
  const auto it = cfg.weights.find(camera);
  if (it == cfg.weights.end())
    throw ConfigError("fusion.weight." + camera + " missing for a present camera");
  return it->second;
}

bool healthy(const CameraSample& s, const FusionConfig& cfg) {
  return s.misses < cfg.miss_threshold;
}

struct WeightedFusion {
  Point2 point;
  double spread;
};

WeightedFusion fuse_weighted_impl(std::span<const CameraSample> samples,
                                  const FusionConfig& cfg) {
  std::vector<const CameraSample*> included;
  for (const CameraSample& s : samples)
    if (healthy(s, cfg)) included.push_back(&s);
  if (included.empty())
    throw NoHealthySource("all " + std::to_string(samples.size()) +
                          " cameras at or past the miss threshold");
  if (included.size() == 1)  // full weight, point returned verbatim
    return {included.front()->point, included.front()->spread};

  double total = 0.0;
  for (const CameraSample* s : included)
    total += weight_for(cfg, s->camera, samples.size());
  WeightedFusion fused{{0.0, 0.0}, 0.0};
  for (const CameraSample* s : included) {
    // If every surviving weight is zero, fall back to an unweighted mean.
    const double w = total > 0.0
                         ? weight_for(cfg, s->camera, samples.size()) / total
                         : 1.0 / static_cast<double>(included.size());
    fused.point.x += w * s->point.x;
    fused.point.y += w * s->point.y;
    fused.spread += w * s->spread;
  }
  return fused;
}

}  // namespace

Point2 fuse_weighted(std::span<const CameraSample> samples, const FusionConfig& cfg) {
  return fuse_weighted_impl(samples, cfg).point;
}

CameraScore camera_score(std::span<const CameraSample> window) {
  if (window.empty()) throw NoSource("camera_score: empty window");
  size_t updated = 0;
  double spread_sum = 0.0;
  for (const CameraSample& s : window) {
    if (s.updated) ++updated;
    spread_sum += s.spread;
  }
  return CameraScore{static_cast<double>(updated) / static_cast<double>(window.size()),
                     spread_sum / static_cast<double>(window.size())};
}

WtaChoice fuse_wta(std::span<const CameraSample> samples,
                   const std::map<std::string, CameraScore>& scores,
                   const FusionConfig& cfg) {
  const CameraSample* best = nullptr;
  CameraScore best_score;
  for (const CameraSample& s : samples) {
    if (!healthy(s, cfg)) continue;
    const auto it = scores.find(s.camera);
    if (it == scores.end())
      throw ConfigError("fuse_wta: no score for camera " + s.camera);
    const CameraScore& sc = it->second;
    const bool wins =
        best == nullptr || sc.score > best_score.score ||
        (sc.score == best_score.score &&
         (sc.mean_spread < best_score.mean_spread ||
          (sc.mean_spread == best_score.mean_spread && s.camera < best->camera)));
    if (wins) {
      best = &s;
      best_score = sc;
    }
  }
  if (best == nullptr)
    throw NoHealthySource("all " + std::to_string(samples.size()) +
                          " cameras at or past the miss threshold");
  return WtaChoice{best->point, best->camera};
}

Point2 fuse_ground_truth(std::span<const Point2> points) {
  if (points.empty()) throw NoSource("fuse_ground_truth: no points present");
  if (points.size() == 1) return points.front();
  Point2 mean{0.0, 0.0};
  for (const Point2& p : points) {
    mean.x += p.x;
    mean.y += p.y;
  }
  mean.x /= static_cast<double>(points.size());
  mean.y /= static_cast<double>(points.size());
  return mean;
}

FusedRun fuse_sequences(const std::map<std::string, Trajectory>& per_camera,
                        const FusionConfig& cfg) {
  validate(cfg);
  if (!cfg.weights.empty()) {
    for (const auto& [camera, traj] : per_camera) {
      (void)traj;
      if (!cfg.weights.contains(camera))
        throw ConfigError("fusion.weight." + camera + " missing");
    }
  }

  struct CameraCursor {
    const Trajectory* traj;
    size_t next = 0;
    int miss_run = 0;
    std::vector<CameraSample> window;
  };
  std::map<std::string, CameraCursor> cursors;
  std::set<int> frames;
  for (const auto& [camera, traj] : per_camera) {
    validate_trajectory(traj, "fuse_sequences input for camera " + camera);
    cursors.emplace(camera, CameraCursor{&traj, 0, 0, {}});
    for (const TrackPoint& p : traj) frames.insert(p.frame);
  }

  FusedRun out;
  for (const int frame : frames) {
    std::vector<CameraSample> samples;
    for (auto& [camera, cur] : cursors) {
      if (cur.next >= cur.traj->size()) continue;
      const TrackPoint& tp = (*cur.traj)[cur.next];
      if (tp.frame != frame) continue;
      ++cur.next;
      cur.miss_run = tp.updated ? 0 : cur.miss_run + 1;
      const CameraSample sample{camera, tp.point, tp.updated, cur.miss_run, tp.spread};
      cur.window.push_back(sample);
      if (cur.window.size() > static_cast<size_t>(cfg.score_window))
        cur.window.erase(cur.window.begin());
      samples.push_back(sample);
    }
    if (samples.empty()) continue;

    try {
      const WeightedFusion fused = fuse_weighted_impl(samples, cfg);
      out.weighted.push_back({frame, fused.point, true, fused.spread});
    } catch (const NoHealthySource&) {
      if (!out.weighted.empty()) {
        const TrackPoint last = out.weighted.back();
        out.weighted.push_back({frame, last.point, false, last.spread});
      }
    }

    try {
      std::map<std::string, CameraScore> scores;
      for (const CameraSample& s : samples)
        scores.emplace(s.camera, camera_score(cursors.at(s.camera).window));
      const WtaChoice choice = fuse_wta(samples, scores, cfg);
      double spread = 0.0;
      for (const CameraSample& s : samples)
        if (s.camera == choice.camera) spread = s.spread;
      out.wta.push_back({frame, choice.point, true, spread});
      out.wta_winner.emplace(frame, choice.camera);
    } catch (const NoHealthySource&) {
      if (!out.wta.empty()) {
        const TrackPoint last = out.wta.back();
        out.wta.push_back({frame, last.point, false, last.spread});
      }
    }
  }
  return out;
}

}  // namespace trackfuse
