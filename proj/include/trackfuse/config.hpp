#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "trackfuse/fusion.hpp"
#include "trackfuse/scenario.hpp"
#include "trackfuse/tracking.hpp"

namespace trackfuse {

/// Flat `key = value` text: one assignment per line, dotted keys for
/// sections, `#` starts a comment. Duplicate or unknown keys are
/// ConfigErrors naming the key.
class FlatConfig {
public:
  static FlatConfig parse_file(const std::filesystem::path& path);
  static FlatConfig parse_string(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback);
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);

  /// Keys below `prefix.`, with the prefix stripped; consumes them.
  std::map<std::string, std::string> take_section(const std::string& prefix);

  /// Cameras mentioned as `camera.<id>.<field>`, in ascending id order.
  std::vector<std::string> camera_ids() const;

  /// Throws ConfigError on the first key never consumed by a getter.
  void reject_unknown() const;

  const std::string& origin() const { return origin_; }

private:
  struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
  };
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

/// Full run configuration for the pipeline: ingestion paths, per-camera
/// homographies (image plane -> base plane), tracker and fusion parameters.
struct RunConfig {
  std::map<std::string, std::filesystem::path> detections;  // camera -> csv
  std::filesystem::path ground_truth;                       // empty when absent
  std::map<std::string, Homography> cameras;                // image -> base
  TrackerConfig tracker;
  FusionConfig fusion;
  bool per_frame_errors = true;
};

/// Parses and cross-validates a run config. Relative paths resolve against
/// the config file's directory.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(FlatConfig& cfg, const std::filesystem::path& base_dir);

/// Scenario config file, plus optional `run.*` passthrough keys copied into
/// the generated run config.
struct ScenarioFile {
  ScenarioConfig scenario;
  std::map<std::string, std::string> run_overrides;
};

ScenarioFile load_scenario_config(const std::filesystem::path& path);
ScenarioFile parse_scenario_config(FlatConfig& cfg);

Homography parse_homography(const std::string& csv_row_major, const std::string& key);
std::string format_homography(const Homography& h);

}  // namespace trackfuse
