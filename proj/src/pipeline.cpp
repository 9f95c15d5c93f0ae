#include "trackfuse/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "trackfuse/fusion.hpp"
#include "trackfuse/tracking.hpp"

namespace trackfuse {

OutputGuard::~OutputGuard() {
  if (dismissed_) return;
  std::error_code ec;
  for (const auto& path : written_) std::filesystem::remove(path, ec);
}

void OutputGuard::track(const std::filesystem::path& path) { written_.push_back(path); }

void OutputGuard::dismiss() { dismissed_ = true; }

namespace {

void ensure_out_dir(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string());
}

std::string default_run_config_text(const ScenarioFile& file) {
  std::map<std::string, std::string> keys;
  for (const auto& [camera, model] : file.scenario.cameras) {
    keys["detections." + camera] = "detections_" + camera + ".csv";
    keys["camera." + camera + ".homography"] =
        format_homography(inverse(model.base_to_image));
  }
  keys["ground_truth"] = "gt.csv";
  for (const auto& [key, value] : file.run_overrides) keys[key] = value;

  std::string text = "# generated by trackfuse simulate; paths are relative to this file\n";
  for (const auto& [key, value] : keys) text += key + " = " + value + "\n";
  return text;
}

}  // namespace

std::vector<std::filesystem::path> run_simulate(const ScenarioFile& file,
                                                const std::filesystem::path& out_dir) {
  ensure_out_dir(out_dir);
  const ScenarioOutput sim = simulate(file.scenario);

  OutputGuard guard;
  const auto gt_path = out_dir / "gt.csv";
  guard.track(gt_path);
  write_ground_truth_base(gt_path, sim.gt_base);
  for (const auto& [camera, dets] : sim.detections) {
    const auto path = out_dir / ("detections_" + camera + ".csv");
    guard.track(path);
    write_detections(path, dets);
  }
  const auto run_cfg_path = out_dir / "run.cfg";
  guard.track(run_cfg_path);
  {
    std::ofstream os(run_cfg_path);
    if (!os) throw IoError("cannot open " + run_cfg_path.string() + " for writing");
    os << default_run_config_text(file);
    os.close();
    if (!os) throw IoError("failed writing " + run_cfg_path.string());
  }
  guard.dismiss();
  return guard.written();
}

Trajectory project_trajectory(const Trajectory& t, const Homography& image_to_base) {
  Trajectory out;
  out.reserve(t.size());
  for (const TrackPoint& p : t)
    out.push_back({p.frame, project(p.point, image_to_base), p.updated, p.spread});
  return out;
}

const Track* primary_track(const std::vector<Track>& tracks) {
  const Track* best = nullptr;
  for (const Track& t : tracks) {
    if (t.empty()) continue;
    if (best == nullptr || t.size() > best->size()) best = &t;
  }
  return best;  // tracks are id-ordered, so ties keep the lowest id
}

namespace {

Trajectory ground_truth_on_base_plane(const RunConfig& cfg) {
  const GroundTruthFile gt_file = read_ground_truth(cfg.ground_truth);
  if (const auto* base = std::get_if<Trajectory>(&gt_file)) return *base;

  // Per-camera form: project every camera's annotation, then average the
  // cameras present at each frame.
  const auto& per_camera = std::get<PerCameraGroundTruth>(gt_file);
  std::map<int, std::vector<Point2>> by_frame;
  for (const auto& [camera, series] : per_camera) {
    const auto cam_it = cfg.cameras.find(camera);
    if (cam_it == cfg.cameras.end())
      throw IoError(cfg.ground_truth.string() + ": ground-truth camera " + camera +
                    " not present in the run config");
    for (const auto& [frame, point] : series)
      by_frame[frame].push_back(project(point, cam_it->second));
  }
  Trajectory out;
  for (const auto& [frame, points] : by_frame)
    out.push_back({frame, fuse_ground_truth(points), true, 0.0});
  return out;
}

bool stage_wanted(const std::vector<std::string>& stages, const std::string& stage) {
  if (stages.empty()) return true;
  return std::find(stages.begin(), stages.end(), stage) != stages.end();
}

}  // namespace

PipelineArtifacts run_pipeline_chain(const RunConfig& cfg,
                                     const std::vector<std::string>& stages) {
  for (const std::string& s : stages) {
    if (s != "raw" && s != "filtered" && s != "weighted" && s != "wta")
      throw ConfigError("unknown stage '" + s +
                        "' (expected raw, filtered, weighted or wta)");
  }

  PipelineArtifacts art;
  for (const auto& [camera, path] : cfg.detections) {
    std::vector<Detection> all = read_detections(path);
    std::vector<Detection> mine;
    for (Detection& d : all)
      if (d.camera == camera) mine.push_back(std::move(d));
    if (mine.empty())
      throw IoError(path.string() + ": no rows for camera " + camera);
    art.detections.emplace(camera, std::move(mine));
  }

  // All cameras track through the same frame range, so one camera keeps
  // predicting while another still sees the person.
  int end_frame = -1;
  for (const auto& [camera, dets] : art.detections) {
    (void)camera;
    end_frame = std::max(end_frame, dets.back().frame);
  }

  for (const auto& [camera, dets] : art.detections) {
    const Homography& to_base = cfg.cameras.at(camera);

    Trajectory raw;
    raw.reserve(dets.size());
    for (const Detection& d : dets) {
      const Point2 p = project(centroid(d.bbox), to_base);
      // Duplicate frames in a raw file collapse to the first occurrence.
      if (raw.empty() || d.frame > raw.back().frame)
        raw.push_back({d.frame, p, true, 0.0});
    }
    art.staged.raw.emplace(camera, std::move(raw));

    const std::vector<Track> tracks = run_tracker(dets, cfg.tracker, end_frame);
    if (const Track* primary = primary_track(tracks)) {
      Trajectory filtered;
      filtered.reserve(primary->size());
      for (const TrackPoint& p : primary->points())
        filtered.push_back({p.frame, project(p.point, to_base), p.updated, p.spread});
      art.staged.filtered.emplace(camera, std::move(filtered));
    }
  }

  if (!art.staged.filtered.empty()) {
    FusedRun fused = fuse_sequences(art.staged.filtered, cfg.fusion);
    art.staged.fused_weighted = std::move(fused.weighted);
    art.staged.fused_wta = std::move(fused.wta);
  }

  if (!cfg.ground_truth.empty())
    art.staged.ground_truth = ground_truth_on_base_plane(cfg);

  StagedInput for_report = art.staged;
  if (!stages.empty()) {
    if (!stage_wanted(stages, "raw")) for_report.raw.clear();
    if (!stage_wanted(stages, "filtered")) for_report.filtered.clear();
    if (!stage_wanted(stages, "weighted")) for_report.fused_weighted.reset();
    if (!stage_wanted(stages, "wta")) for_report.fused_wta.reset();
  }
  art.report = staged_report(for_report, cfg.per_frame_errors);
  return art;
}

std::vector<std::filesystem::path> run_pipeline(const RunConfig& cfg,
                                                const std::filesystem::path& out_dir,
                                                const std::vector<std::string>& stages) {
  const PipelineArtifacts art = run_pipeline_chain(cfg, stages);

  ensure_out_dir(out_dir);
  OutputGuard guard;
  auto write_traj = [&](const std::string& name, const Trajectory& t) {
    const auto path = out_dir / name;
    guard.track(path);
    write_trajectory(path, t);
  };

  for (const auto& [camera, t] : art.staged.raw) write_traj("raw_" + camera + ".csv", t);
  for (const auto& [camera, t] : art.staged.filtered)
    write_traj("filtered_" + camera + ".csv", t);
  if (art.staged.fused_weighted) write_traj("fused_weighted.csv", *art.staged.fused_weighted);
  if (art.staged.fused_wta) write_traj("fused_wta.csv", *art.staged.fused_wta);

  {
    const auto path = out_dir / "report.csv";
    guard.track(path);
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    write_report_csv(os, art.report);
    os.close();
    if (!os) throw IoError("failed writing " + path.string());
  }
  {
    const auto path = out_dir / "report.txt";
    guard.track(path);
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << render_report_table(art.report);
    os.close();
    if (!os) throw IoError("failed writing " + path.string());
  }
  if (cfg.per_frame_errors) {
    const auto path = out_dir / "errors_per_frame.csv";
    guard.track(path);
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    write_per_frame_csv(os, art.report);
    os.close();
    if (!os) throw IoError("failed writing " + path.string());
  }

  guard.dismiss();
  return guard.written();
}

std::vector<std::filesystem::path> run_track(const RunConfig& cfg,
                                             const std::filesystem::path& out_dir) {
  PipelineArtifacts art = run_pipeline_chain(cfg, {"filtered"});
  ensure_out_dir(out_dir);
  OutputGuard guard;
  for (const auto& [camera, t] : art.staged.filtered) {
    const auto path = out_dir / ("filtered_" + camera + ".csv");
    guard.track(path);
    write_trajectory(path, t);
  }
  guard.dismiss();
  return guard.written();
}

std::vector<std::filesystem::path> run_fuse(
    const std::map<std::string, std::filesystem::path>& trajectories,
    const FusionConfig& fusion, const std::filesystem::path& out_dir) {
  std::map<std::string, Trajectory> per_camera;
  for (const auto& [camera, path] : trajectories)
    per_camera.emplace(camera, read_trajectory(path));
  if (per_camera.empty()) throw ConfigError("fuse: no input trajectories given");

  const FusedRun fused = fuse_sequences(per_camera, fusion);
  ensure_out_dir(out_dir);
  OutputGuard guard;
  const auto weighted_path = out_dir / "fused_weighted.csv";
  guard.track(weighted_path);
  write_trajectory(weighted_path, fused.weighted);
  const auto wta_path = out_dir / "fused_wta.csv";
  guard.track(wta_path);
  write_trajectory(wta_path, fused.wta);
  guard.dismiss();
  return guard.written();
}

MseStats run_evaluate(const std::filesystem::path& estimate,
                      const std::filesystem::path& ground_truth) {
  return mse(read_trajectory_like(estimate), read_trajectory_like(ground_truth));
}

}  // namespace trackfuse
