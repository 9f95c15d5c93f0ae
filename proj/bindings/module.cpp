#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "trackfuse/cli.hpp"
#include "trackfuse/config.hpp"
#include "trackfuse/csv.hpp"
#include "trackfuse/evaluation.hpp"
#include "trackfuse/fusion.hpp"
#include "trackfuse/pipeline.hpp"
#include "trackfuse/scenario.hpp"
#include "trackfuse/tracking.hpp"

namespace py = pybind11;
using namespace trackfuse;

namespace {

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(static_cast<size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) {
    out[static_cast<size_t>(r)].resize(static_cast<size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c) out[static_cast<size_t>(r)][static_cast<size_t>(c)] = m(r, c);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-camera person tracking and fusion toolkit";

  py::register_exception<SingularHomography>(m, "SingularHomography");
  py::register_exception<DegenerateProjection>(m, "DegenerateProjection");
  py::register_exception<SingularInnovation>(m, "SingularInnovation");
  py::register_exception<UnsortedInput>(m, "UnsortedInput");
  py::register_exception<NoHealthySource>(m, "NoHealthySource");
  py::register_exception<NoSource>(m, "NoSource");
  py::register_exception<NoOverlap>(m, "NoOverlap");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<IoError>(m, "IoError");

  py::class_<Point2>(m, "Point2")
      .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
      .def_readwrite("x", &Point2::x)
      .def_readwrite("y", &Point2::y)
      .def("__eq__", [](const Point2& a, const Point2& b) { return a == b; })
      .def("__repr__", [](const Point2& p) {
        return "Point2(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<BBox>(m, "BBox")
      .def(py::init<double, double, double, double>(), py::arg("cx") = 0.0,
           py::arg("cy") = 0.0, py::arg("w") = 1.0, py::arg("h") = 1.0)
      .def_readwrite("cx", &BBox::cx)
      .def_readwrite("cy", &BBox::cy)
      .def_readwrite("w", &BBox::w)
      .def_readwrite("h", &BBox::h);

  py::class_<Detection>(m, "Detection")
      .def(py::init([](int frame, const std::string& camera, const BBox& bbox,
                       std::optional<double> confidence) {
             return Detection{frame, camera, bbox, confidence};
           }),
           py::arg("frame"), py::arg("camera"), py::arg("bbox"),
           py::arg("confidence") = py::none())
      .def_readwrite("frame", &Detection::frame)
      .def_readwrite("camera", &Detection::camera)
      .def_readwrite("bbox", &Detection::bbox)
      .def_readwrite("confidence", &Detection::confidence);

  py::class_<TrackPoint>(m, "TrackPoint")
      .def(py::init([](int frame, const Point2& point, bool updated, double spread) {
             return TrackPoint{frame, point, updated, spread};
           }),
           py::arg("frame"), py::arg("point"), py::arg("updated") = true,
           py::arg("spread") = 0.0)
      .def_readwrite("frame", &TrackPoint::frame)
      .def_readwrite("point", &TrackPoint::point)
      .def_readwrite("updated", &TrackPoint::updated)
      .def_readwrite("spread", &TrackPoint::spread);

  py::class_<Track>(m, "Track")
      .def(py::init<int, std::string>(), py::arg("id"), py::arg("camera"))
      .def("append", &Track::append)
      .def_property_readonly("id", &Track::id)
      .def_property_readonly("camera", &Track::camera)
      .def_property_readonly("points", &Track::points)
      .def("__len__", &Track::size);

  py::class_<Homography>(m, "Homography")
      .def_static("identity", &Homography::identity)
      .def("row_major", &Homography::row_major);
  m.def("validate_homography",
        [](const std::array<double, 9>& rm) { return validate_homography(rm); },
        py::arg("row_major"), "Build a homography from 9 row-major numbers.");
  m.def("inverse", &inverse, py::arg("homography"));
  m.def("project", &project, py::arg("point"), py::arg("homography"));
  m.def("centroid", &centroid, py::arg("bbox"));

  py::enum_<ModelKind>(m, "ModelKind")
      .value("CONSTANT_VELOCITY", ModelKind::kConstantVelocity)
      .value("CONSTANT_ACCELERATION", ModelKind::kConstantAcceleration);

  py::class_<MotionModel>(m, "MotionModel")
      .def(py::init([](ModelKind kind, double dt) { return MotionModel{kind, dt}; }),
           py::arg("kind") = ModelKind::kConstantVelocity, py::arg("dt") = 1.0)
      .def_readwrite("kind", &MotionModel::kind)
      .def_readwrite("dt", &MotionModel::dt);

  py::class_<NoiseConfig>(m, "NoiseConfig")
      .def(py::init([](double q, double r, double p0) { return NoiseConfig{q, r, p0}; }),
           py::arg("q_scale") = 1.0, py::arg("r_scale") = 1.0, py::arg("p0_scale") = 1.0)
      .def_readwrite("q_scale", &NoiseConfig::q_scale)
      .def_readwrite("r_scale", &NoiseConfig::r_scale)
      .def_readwrite("p0_scale", &NoiseConfig::p0_scale);

  py::class_<FilterState>(m, "FilterState")
      .def_property_readonly("x", [](const FilterState& s) {
        return std::vector<double>(s.x.data(), s.x.data() + s.x.size());
      })
      .def_property_readonly("P", [](const FilterState& s) { return to_rows(s.P); })
      .def_readonly("model", &FilterState::model)
      .def_readonly("misses", &FilterState::misses)
      .def_readonly("frame", &FilterState::frame)
      .def_property_readonly("position", &position)
      .def_property_readonly("spread", &position_spread);

  m.def("state_dim", &state_dim, py::arg("model"));
  m.def("transition_matrix",
        [](const MotionModel& model) { return to_rows(transition_matrix(model)); },
        py::arg("model"));
  m.def("observation_matrix",
        [](const MotionModel& model) { return to_rows(observation_matrix(model)); },
        py::arg("model"));
  m.def("init_filter", &init_filter, py::arg("detection"), py::arg("model"),
        py::arg("noise") = NoiseConfig{});
  m.def("predict", &predict, py::arg("state"));
  m.def("update", &update, py::arg("state"), py::arg("measurement"));
  m.def("step", &step, py::arg("state"), py::arg("measurement") = py::none());

  py::class_<TrackerConfig>(m, "TrackerConfig")
      .def(py::init([](const MotionModel& model, const NoiseConfig& noise,
                       double gate_radius, int max_misses) {
             return TrackerConfig{model, noise, gate_radius, max_misses};
           }),
           py::arg("model") = MotionModel{}, py::arg("noise") = NoiseConfig{},
           py::arg("gate_radius") = 50.0, py::arg("max_misses") = 30)
      .def_readwrite("model", &TrackerConfig::model)
      .def_readwrite("noise", &TrackerConfig::noise)
      .def_readwrite("gate_radius", &TrackerConfig::gate_radius)
      .def_readwrite("max_misses", &TrackerConfig::max_misses);

  m.def("run_tracker",
        [](const std::vector<Detection>& dets, const TrackerConfig& cfg) {
          return run_tracker(dets, cfg);
        },
        py::arg("detections"), py::arg("config"));

  py::class_<FusionConfig>(m, "FusionConfig")
      .def(py::init([](const std::map<std::string, double>& weights, int miss_threshold,
                       int score_window) {
             return FusionConfig{weights, miss_threshold, score_window};
           }),
           py::arg("weights") = std::map<std::string, double>{},
           py::arg("miss_threshold") = 3, py::arg("score_window") = 10)
      .def_readwrite("weights", &FusionConfig::weights)
      .def_readwrite("miss_threshold", &FusionConfig::miss_threshold)
      .def_readwrite("score_window", &FusionConfig::score_window);

  py::class_<CameraSample>(m, "CameraSample")
      .def(py::init([](const std::string& camera, const Point2& point, bool updated,
                       int misses, double spread) {
             return CameraSample{camera, point, updated, misses, spread};
           }),
           py::arg("camera"), py::arg("point"), py::arg("updated") = true,
           py::arg("misses") = 0, py::arg("spread") = 0.0)
      .def_readwrite("camera", &CameraSample::camera)
      .def_readwrite("point", &CameraSample::point)
      .def_readwrite("updated", &CameraSample::updated)
      .def_readwrite("misses", &CameraSample::misses)
      .def_readwrite("spread", &CameraSample::spread);

  py::class_<CameraScore>(m, "CameraScore")
      .def_readonly("score", &CameraScore::score)
      .def_readonly("mean_spread", &CameraScore::mean_spread);

  py::class_<WtaChoice>(m, "WtaChoice")
      .def_readonly("point", &WtaChoice::point)
      .def_readonly("camera", &WtaChoice::camera);

  py::class_<FusedRun>(m, "FusedRun")
      .def_readonly("weighted", &FusedRun::weighted)
      .def_readonly("wta", &FusedRun::wta)
      .def_readonly("wta_winner", &FusedRun::wta_winner);

  m.def("fuse_weighted",
        [](const std::vector<CameraSample>& samples, const FusionConfig& cfg) {
          return fuse_weighted(samples, cfg);
        },
        py::arg("samples"), py::arg("config"));
  m.def("camera_score",
        [](const std::vector<CameraSample>& window) { return camera_score(window); },
        py::arg("window"));
  m.def("fuse_wta",
        [](const std::vector<CameraSample>& samples,
           const std::map<std::string, CameraScore>& scores, const FusionConfig& cfg) {
          return fuse_wta(samples, scores, cfg);
        },
        py::arg("samples"), py::arg("scores"), py::arg("config"));
  m.def("fuse_ground_truth",
        [](const std::vector<Point2>& points) { return fuse_ground_truth(points); },
        py::arg("points"));
  m.def("fuse_sequences", &fuse_sequences, py::arg("per_camera"), py::arg("config"));

  py::class_<MseStats>(m, "MseStats")
      .def_readonly("mse", &MseStats::mse)
      .def_readonly("rmse", &MseStats::rmse)
      .def_readonly("mean_dist", &MseStats::mean_dist)
      .def_readonly("frames", &MseStats::frames)
      .def_readonly("skipped", &MseStats::skipped);

  m.def("mse", &mse, py::arg("estimate"), py::arg("ground_truth"));
  m.def("per_frame_squared_error", &per_frame_squared_error, py::arg("estimate"),
        py::arg("ground_truth"));

  py::class_<StageResult>(m, "StageResult")
      .def_readonly("stage", &StageResult::stage)
      .def_readonly("stats", &StageResult::stats)
      .def_readonly("per_frame", &StageResult::per_frame);

  py::class_<MseReport>(m, "MseReport")
      .def_readonly("stages", &MseReport::stages)
      .def_readonly("notes", &MseReport::notes);

  py::class_<StagedInput>(m, "StagedInput")
      .def(py::init<>())
      .def_readwrite("raw", &StagedInput::raw)
      .def_readwrite("filtered", &StagedInput::filtered)
      .def_readwrite("fused_weighted", &StagedInput::fused_weighted)
      .def_readwrite("fused_wta", &StagedInput::fused_wta)
      .def_readwrite("ground_truth", &StagedInput::ground_truth);

  m.def("staged_report", &staged_report, py::arg("input"),
        py::arg("with_per_frame") = false);

  py::class_<TruthInit>(m, "TruthInit")
      .def(py::init([](const Point2& position, const Point2& velocity,
                       const Point2& acceleration) {
             return TruthInit{position, velocity, acceleration};
           }),
           py::arg("position") = Point2{}, py::arg("velocity") = Point2{},
           py::arg("acceleration") = Point2{})
      .def_readwrite("position", &TruthInit::position)
      .def_readwrite("velocity", &TruthInit::velocity)
      .def_readwrite("acceleration", &TruthInit::acceleration);

  py::class_<MissSpec>(m, "MissSpec")
      .def(py::init([](double probability, const std::vector<std::pair<int, int>>& windows) {
             return MissSpec{probability, windows};
           }),
           py::arg("probability") = 0.0,
           py::arg("windows") = std::vector<std::pair<int, int>>{})
      .def_readwrite("probability", &MissSpec::probability)
      .def_readwrite("windows", &MissSpec::windows);

  py::class_<CameraModel>(m, "CameraModel")
      .def(py::init([](const Homography& base_to_image, double noise_sigma,
                       const MissSpec& miss) {
             return CameraModel{base_to_image, noise_sigma, miss};
           }),
           py::arg("base_to_image") = Homography::identity(),
           py::arg("noise_sigma") = 0.0, py::arg("miss") = MissSpec{})
      .def_readwrite("base_to_image", &CameraModel::base_to_image)
      .def_readwrite("noise_sigma", &CameraModel::noise_sigma)
      .def_readwrite("miss", &CameraModel::miss);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("frames", &ScenarioConfig::frames)
      .def_readwrite("truth_model", &ScenarioConfig::truth_model)
      .def_readwrite("truth", &ScenarioConfig::truth)
      .def_readwrite("cameras", &ScenarioConfig::cameras)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("bbox_w", &ScenarioConfig::bbox_w)
      .def_readwrite("bbox_h", &ScenarioConfig::bbox_h);

  py::class_<ScenarioOutput>(m, "ScenarioOutput")
      .def_readonly("gt_base", &ScenarioOutput::gt_base)
      .def_readonly("gt_per_camera", &ScenarioOutput::gt_per_camera)
      .def_readonly("detections", &ScenarioOutput::detections);

  m.def("simulate", &simulate, py::arg("config"));

  m.def("run_cli", &run_cli, py::arg("args"),
        "Run the trackfuse command line in-process; returns the exit code.");

  m.def("project_trajectory", &project_trajectory, py::arg("trajectory"),
        py::arg("image_to_base"));
}
