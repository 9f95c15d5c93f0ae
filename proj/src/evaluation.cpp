#include "trackfuse/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace trackfuse {

namespace {

std::map<int, Point2> by_frame(const Trajectory& t) {
  std::map<int, Point2> out;
  for (const TrackPoint& p : t) out.emplace(p.frame, p.point);
  return out;
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::pair<int, double>> per_frame_squared_error(
    const Trajectory& estimate, const Trajectory& ground_truth) {
  const auto est = by_frame(estimate);
  const auto gt = by_frame(ground_truth);
  std::vector<std::pair<int, double>> out;
  for (const auto& [frame, p] : est) {
    const auto it = gt.find(frame);
    if (it != gt.end()) out.emplace_back(frame, squared_distance(p, it->second));
  }
  return out;
}

MseStats mse(const Trajectory& estimate, const Trajectory& ground_truth) {
  const auto est = by_frame(estimate);
  const auto gt = by_frame(ground_truth);
  MseStats stats;
  double sq_sum = 0.0;
  double dist_sum = 0.0;
  for (const auto& [frame, p] : est) {
    const auto it = gt.find(frame);
    if (it == gt.end()) {
      ++stats.skipped;
      continue;
    }
    const double sq = squared_distance(p, it->second);
    sq_sum += sq;
    dist_sum += std::sqrt(sq);
    ++stats.frames;
  }
  for (const auto& [frame, p] : gt) {
    (void)p;
    if (!est.contains(frame)) ++stats.skipped;
  }
  if (stats.frames == 0)
    throw NoOverlap("estimate and ground truth share no common frame");
  stats.mse = sq_sum / stats.frames;
  stats.rmse = std::sqrt(stats.mse);
  stats.mean_dist = dist_sum / stats.frames;
  return stats;
}

MseReport staged_report(const StagedInput& input, bool with_per_frame) {
  MseReport report;
  auto add_stage = [&](const std::string& stage, const Trajectory& estimate) {
    if (estimate.empty()) {
      report.notes.push_back("stage " + stage + ": no data, reported absent");
      return;
    }
    try {
      StageResult result{stage, mse(estimate, input.ground_truth), {}};
      if (with_per_frame)
        result.per_frame = per_frame_squared_error(estimate, input.ground_truth);
      report.stages.push_back(std::move(result));
    } catch (const NoOverlap&) {
      report.notes.push_back("stage " + stage +
                             ": no frame overlap with ground truth, reported absent");
    }
  };

  if (input.ground_truth.empty()) {
    report.notes.push_back("no ground truth available; all stages reported absent");
    return report;
  }
  for (const auto& [camera, traj] : input.raw) add_stage("raw_" + camera, traj);
  for (const auto& [camera, traj] : input.filtered) add_stage("filtered_" + camera, traj);
  if (input.fused_weighted) add_stage("weighted", *input.fused_weighted);
  else report.notes.push_back("stage weighted: no data, reported absent");
  if (input.fused_wta) add_stage("wta", *input.fused_wta);
  else report.notes.push_back("stage wta: no data, reported absent");
  return report;
}

void write_report_csv(std::ostream& os, const MseReport& report) {
  os << "stage,mse,rmse,mean_dist,frames\n";
  for (const StageResult& s : report.stages) {
    os << s.stage << ',' << format_g17(s.stats.mse) << ',' << format_g17(s.stats.rmse)
       << ',' << format_g17(s.stats.mean_dist) << ',' << s.stats.frames << '\n';
  }
}

std::string render_report_table(const MseReport& report) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << std::left << std::setw(24) << "stage" << std::right << std::setw(10) << "mse"
     << std::setw(10) << "rmse" << std::setw(12) << "mean_dist" << std::setw(8)
     << "frames" << '\n';
  for (const StageResult& s : report.stages) {
    os << std::left << std::setw(24) << s.stage << std::right << std::setw(10)
       << s.stats.mse << std::setw(10) << s.stats.rmse << std::setw(12)
       << s.stats.mean_dist << std::setw(8) << s.stats.frames << '\n';
  }
  for (const std::string& note : report.notes) os << "note: " << note << '\n';
  return os.str();
}

void write_per_frame_csv(std::ostream& os, const MseReport& report) {
  os << "frame,stage,sq_error\n";
  for (const StageResult& s : report.stages) {
    for (const auto& [frame, sq] : s.per_frame)
      os << frame << ',' << s.stage << ',' << format_g17(sq) << '\n';
  }
}

}  // namespace trackfuse
