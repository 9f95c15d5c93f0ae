#include "trackfuse/tracking.hpp"

#include <algorithm>
#include <tuple>

namespace trackfuse {

Association associate(std::span<const Point2> predicted,
                      std::span<const Point2> detections, double gate_radius) {
  struct Pair {
    double dist;
    size_t track;
    size_t det;
  };
  std::vector<Pair> pairs;
  pairs.reserve(predicted.size() * detections.size());
  for (size_t t = 0; t < predicted.size(); ++t) {
    for (size_t d = 0; d < detections.size(); ++d) {
      const double dist = distance(predicted[t], detections[d]);
      if (dist <= gate_radius) pairs.push_back({dist, t, d});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(a.dist, a.track, a.det) < std::tie(b.dist, b.track, b.det);
  });

  Association out;
  out.detection_for_track.assign(predicted.size(), -1);
  std::vector<bool> det_taken(detections.size(), false);
  for (const Pair& p : pairs) {
    if (out.detection_for_track[p.track] >= 0 || det_taken[p.det]) continue;
    out.detection_for_track[p.track] = static_cast<int>(p.det);
    det_taken[p.det] = true;
  }
  for (size_t d = 0; d < detections.size(); ++d) {
    if (!det_taken[d]) out.unassigned_detections.push_back(static_cast<int>(d));
  }
  return out;
}

std::vector<Track> run_tracker(std::span<const Detection> detections,
                               const TrackerConfig& cfg, int end_frame) {
  for (size_t i = 1; i < detections.size(); ++i) {
    if (detections[i].frame < detections[i - 1].frame) {
      throw UnsortedInput("detection stream frame " +
                          std::to_string(detections[i].frame) + " follows " +
                          std::to_string(detections[i - 1].frame) +
                          " at input index " + std::to_string(i));
    }
  }

  std::vector<Track> finished;
  if (detections.empty()) return finished;

  std::vector<LiveTrack> live;  // kept in ascending track-id order
  int next_id = 0;
  size_t cursor = 0;
  const int first_frame = detections.front().frame;
  const int last_frame = std::max(detections.back().frame, end_frame);

  for (int frame = first_frame; frame <= last_frame; ++frame) {
    std::vector<Point2> frame_points;
    while (cursor < detections.size() && detections[cursor].frame == frame) {
      frame_points.push_back(centroid(detections[cursor].bbox));
      ++cursor;
    }
    const size_t frame_begin = cursor - frame_points.size();

    // Predict every live track, then associate on the predicted positions.
    std::vector<FilterState> predicted;
    std::vector<Point2> predicted_pos;
    predicted.reserve(live.size());
    for (const LiveTrack& lt : live) {
      predicted.push_back(predict(lt.filter));
      predicted_pos.push_back(position(predicted.back()));
    }
    const Association assoc = associate(predicted_pos, frame_points, cfg.gate_radius);

    std::vector<LiveTrack> survivors;
    survivors.reserve(live.size());
    for (size_t t = 0; t < live.size(); ++t) {
      LiveTrack& lt = live[t];
      const int det_idx = assoc.detection_for_track[t];
      if (det_idx >= 0) {
        lt.filter = update(predicted[t], frame_points[static_cast<size_t>(det_idx)]);
        lt.track.append({frame, position(lt.filter), true, position_spread(lt.filter)});
        survivors.push_back(std::move(lt));
      } else {
        const int new_misses = lt.filter.misses + 1;
        if (new_misses > cfg.max_misses) {
          finished.push_back(std::move(lt.track));  // no point for a dead track
          continue;
        }
        lt.filter = predicted[t];
        lt.filter.misses = new_misses;
        lt.track.append({frame, position(lt.filter), false, position_spread(lt.filter)});
        survivors.push_back(std::move(lt));
      }
    }
    live = std::move(survivors);

    for (int d : assoc.unassigned_detections) {
      const Detection& det = detections[frame_begin + static_cast<size_t>(d)];
      FilterState filter = init_filter(det, cfg.model, cfg.noise);
      Track track(next_id++, det.camera);
      track.append({frame, centroid(det.bbox), true, position_spread(filter)});
      live.push_back({std::move(track), std::move(filter)});
    }
  }

  for (LiveTrack& lt : live) finished.push_back(std::move(lt.track));
  std::sort(finished.begin(), finished.end(),
            [](const Track& a, const Track& b) { return a.id() < b.id(); });
  return finished;
}

}  // namespace trackfuse
