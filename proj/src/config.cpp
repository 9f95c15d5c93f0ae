#include "trackfuse/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace trackfuse {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& value, const std::string& key) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("key " + key + ": not a number: '" + value + "'");
  return out;
}

std::vector<double> to_doubles(const std::string& value, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), key));
  return out;
}

}  // namespace

FlatConfig FlatConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_string(text.str(), path.string());
}

FlatConfig FlatConfig::parse_string(const std::string& text, const std::string& origin) {
  FlatConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": expected 'key = value', got '" + trim(raw) + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    if (cfg.entries_.contains(key))
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key " + key);
    cfg.entries_.emplace(key, Entry{value, line_no, false});
  }
  return cfg;
}

bool FlatConfig::has(const std::string& key) const { return entries_.contains(key); }

std::string FlatConfig::get_string(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw ConfigError(origin_ + ": missing required key " + key);
  it->second.consumed = true;
  return it->second.value;
}

std::string FlatConfig::get_string(const std::string& key, const std::string& fallback) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.consumed = true;
  return it->second.value;
}

double FlatConfig::get_double(const std::string& key, double fallback) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.consumed = true;
  return to_double(it->second.value, key);
}

int FlatConfig::get_int(const std::string& key, int fallback) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.consumed = true;
  int out = 0;
  const std::string& v = it->second.value;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("key " + key + ": not an integer: '" + v + "'");
  return out;
}

std::uint64_t FlatConfig::get_uint64(const std::string& key, std::uint64_t fallback) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.consumed = true;
  std::uint64_t out = 0;
  const std::string& v = it->second.value;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("key " + key + ": not an unsigned integer: '" + v + "'");
  return out;
}

bool FlatConfig::get_bool(const std::string& key, bool fallback) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.consumed = true;
  const std::string& v = it->second.value;
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key " + key + ": expected true/false, got '" + v + "'");
}

std::map<std::string, std::string> FlatConfig::take_section(const std::string& prefix) {
  std::map<std::string, std::string> out;
  const std::string dotted = prefix + ".";
  for (auto& [key, entry] : entries_) {
    if (key.rfind(dotted, 0) == 0) {
      entry.consumed = true;
      out.emplace(key.substr(dotted.size()), entry.value);
    }
  }
  return out;
}

namespace {

// Camera ids become CSV fields and output file names.
void validate_camera_id(const std::string& id, const std::string& key) {
  if (id.empty()) throw ConfigError("key " + key + ": empty camera id");
  for (const char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok)
      throw ConfigError("key " + key + ": camera id '" + id +
                        "' may only use letters, digits, '_' and '-'");
  }
}

}  // namespace

std::vector<std::string> FlatConfig::camera_ids() const {
  std::set<std::string> ids;
  for (const auto& [key, entry] : entries_) {
    (void)entry;
    if (key.rfind("camera.", 0) != 0) continue;
    const auto rest = key.substr(7);
    const auto dot = rest.find('.');
    if (dot == std::string::npos || dot == 0)
      throw ConfigError("key " + key + ": expected camera.<id>.<field>");
    const std::string id = rest.substr(0, dot);
    validate_camera_id(id, key);
    ids.insert(id);
  }
  return {ids.begin(), ids.end()};
}

void FlatConfig::reject_unknown() const {
  for (const auto& [key, entry] : entries_) {
    if (!entry.consumed)
      throw ConfigError(origin_ + ":" + std::to_string(entry.line) +
                        ": unknown key " + key);
  }
}

Homography parse_homography(const std::string& csv_row_major, const std::string& key) {
  const std::vector<double> values = to_doubles(csv_row_major, key);
  if (values.size() != 9)
    throw ConfigError("key " + key + ": homography needs 9 row-major numbers, got " +
                      std::to_string(values.size()));
  std::array<double, 9> m{};
  std::copy(values.begin(), values.end(), m.begin());
  try {
    return validate_homography(m);
  } catch (const SingularHomography& e) {
    throw ConfigError("key " + key + ": " + e.what());
  }
}

std::string format_homography(const Homography& h) {
  const auto m = h.row_major();
  std::string out;
  char buf[64];
  for (size_t i = 0; i < m.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", m[i]);
    if (i > 0) out += ',';
    out += buf;
  }
  return out;
}

namespace {

MotionModel parse_model(const std::string& value, const std::string& key) {
  if (value == "cv") return {ModelKind::kConstantVelocity, 1.0};
  if (value == "ca") return {ModelKind::kConstantAcceleration, 1.0};
  throw ConfigError("key " + key + ": expected cv or ca, got '" + value + "'");
}

int to_int(const std::string& value, const std::string& key) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError("key " + key + ": not an integer: '" + value + "'");
  return out;
}

std::vector<std::pair<int, int>> parse_windows(const std::string& value,
                                               const std::string& key) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("key " + key + ": expected start:end, got '" + item + "'");
    out.emplace_back(to_int(trim(item.substr(0, colon)), key),
                     to_int(trim(item.substr(colon + 1)), key));
  }
  return out;
}

}  // namespace

ScenarioFile parse_scenario_config(FlatConfig& cfg) {
  ScenarioFile out;
  ScenarioConfig& sc = out.scenario;
  sc.frames = cfg.get_int("frames", sc.frames);
  sc.seed = cfg.get_uint64("seed", sc.seed);
  sc.truth_model = parse_model(cfg.get_string("truth.model", "cv"), "truth.model");
  sc.truth.position = {cfg.get_double("truth.x", 0.0), cfg.get_double("truth.y", 0.0)};
  sc.truth.velocity = {cfg.get_double("truth.vx", 0.0), cfg.get_double("truth.vy", 0.0)};
  sc.truth.acceleration = {cfg.get_double("truth.ax", 0.0), cfg.get_double("truth.ay", 0.0)};
  sc.bbox_w = cfg.get_double("bbox.w", sc.bbox_w);
  sc.bbox_h = cfg.get_double("bbox.h", sc.bbox_h);
  for (const std::string& id : cfg.camera_ids()) {
    CameraModel cam;
    const std::string prefix = "camera." + id + ".";
    if (cfg.has(prefix + "homography"))
      cam.base_to_image = parse_homography(cfg.get_string(prefix + "homography"),
                                           prefix + "homography");
    cam.noise_sigma = cfg.get_double(prefix + "sigma", 0.0);
    cam.miss.probability = cfg.get_double(prefix + "miss_prob", 0.0);
    if (cfg.has(prefix + "occlusions"))
      cam.miss.windows = parse_windows(cfg.get_string(prefix + "occlusions"),
                                       prefix + "occlusions");
    sc.cameras.emplace(id, std::move(cam));
  }
  out.run_overrides = cfg.take_section("run");
  cfg.reject_unknown();
  validate(sc);
  return out;
}

ScenarioFile load_scenario_config(const std::filesystem::path& path) {
  FlatConfig cfg = FlatConfig::parse_file(path);
  return parse_scenario_config(cfg);
}

RunConfig parse_run_config(FlatConfig& cfg, const std::filesystem::path& base_dir) {
  RunConfig out;
  for (const auto& [camera, path] : cfg.take_section("detections")) {
    validate_camera_id(camera, "detections." + camera);
    out.detections.emplace(camera, base_dir / path);
  }
  if (out.detections.empty())
    throw ConfigError(cfg.origin() + ": at least one detections.<camera> entry required");
  if (cfg.has("ground_truth"))
    out.ground_truth = base_dir / cfg.get_string("ground_truth");

  // dt is fixed at one frame; variable frame rates are out of scope.
  out.tracker.model = parse_model(cfg.get_string("tracker.model", "cv"), "tracker.model");
  out.tracker.gate_radius = cfg.get_double("tracker.gate_radius", 50.0);
  if (!(out.tracker.gate_radius > 0.0))
    throw ConfigError("key tracker.gate_radius: must be > 0");
  out.tracker.max_misses = cfg.get_int("tracker.max_misses", 30);
  if (out.tracker.max_misses < 1)
    throw ConfigError("key tracker.max_misses: must be >= 1");
  out.tracker.noise.q_scale = cfg.get_double("tracker.q_scale", 1.0);
  out.tracker.noise.r_scale = cfg.get_double("tracker.r_scale", 1.0);
  out.tracker.noise.p0_scale = cfg.get_double("tracker.p0_scale", 1.0);
  if (!(out.tracker.noise.q_scale > 0.0 && out.tracker.noise.r_scale > 0.0 &&
        out.tracker.noise.p0_scale > 0.0))
    throw ConfigError("key tracker.q_scale/r_scale/p0_scale: must be > 0");

  for (const auto& [camera, weight] : cfg.take_section("fusion.weight"))
    out.fusion.weights.emplace(camera, to_double(weight, "fusion.weight." + camera));
  out.fusion.miss_threshold = cfg.get_int("fusion.miss_threshold", 3);
  out.fusion.score_window = cfg.get_int("fusion.score_window", 10);
  validate(out.fusion);

  for (const std::string& id : cfg.camera_ids()) {
    const std::string key = "camera." + id + ".homography";
    if (!out.detections.contains(id))
      throw ConfigError("key " + key + ": camera " + id + " has no detections.* entry");
    out.cameras.emplace(id, parse_homography(cfg.get_string(key), key));
  }
  for (const auto& [camera, path] : out.detections) {
    (void)path;
    if (!out.cameras.contains(camera))
      out.cameras.emplace(camera, Homography::identity());
  }
  for (const auto& [camera, weight] : out.fusion.weights) {
    (void)weight;
    if (!out.detections.contains(camera))
      throw ConfigError("key fusion.weight." + camera + ": camera " + camera +
                        " has no detections.* entry");
  }
  if (!out.fusion.weights.empty()) {
    for (const auto& [camera, path] : out.detections) {
      (void)path;
      if (!out.fusion.weights.contains(camera))
        throw ConfigError("key fusion.weight." + camera +
                          ": missing (weights, when given, must cover every camera)");
    }
  }

  out.per_frame_errors = cfg.get_bool("report.per_frame", true);
  cfg.reject_unknown();
  return out;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  FlatConfig cfg = FlatConfig::parse_file(path);
  return parse_run_config(cfg, path.parent_path());
}

}  // namespace trackfuse
