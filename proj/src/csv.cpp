#include "trackfuse/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace trackfuse {

namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

struct RowContext {
  const std::filesystem::path& path;
  int row;  // 1-based data row (header excluded)

  [[noreturn]] void fail(const std::string& message) const {
    throw IoError(path.string() + ": row " + std::to_string(row) + ": " + message);
  }
};

double parse_double(const std::string& field, const RowContext& ctx,
                    const std::string& column) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc() || ptr != field.data() + field.size())
    ctx.fail("column " + column + ": not a number: '" + field + "'");
  if (!std::isfinite(out)) ctx.fail("column " + column + ": not finite");
  return out;
}

int parse_frame(const std::string& field, const RowContext& ctx) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc() || ptr != field.data() + field.size())
    ctx.fail("column frame: not an integer: '" + field + "'");
  if (out < 0) ctx.fail("column frame: must be >= 0, got " + field);
  return out;
}

class CsvReader {
public:
  CsvReader(const std::filesystem::path& path, const std::string& expected_header)
      : path_(path), in_(path) {
    if (!in_) throw IoError("cannot open " + path.string());
    std::string header;
    if (!std::getline(in_, header))
      throw IoError(path.string() + ": empty file, expected header " + expected_header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != expected_header)
      throw IoError(path.string() + ": expected header '" + expected_header +
                    "', got '" + header + "'");
  }

  std::optional<std::pair<std::vector<std::string>, RowContext>> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++row_;
      if (line.empty() || line == "\r") continue;
      return std::make_pair(split_row(line), RowContext{path_, row_});
    }
    return std::nullopt;
  }

private:
  const std::filesystem::path path_;
  std::ifstream in_;
  int row_ = 0;
};

std::string read_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw IoError(path.string() + ": empty file");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  return header;
}

class FileWriter {
public:
  explicit FileWriter(const std::filesystem::path& path) : path_(path), out_(path) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  }
  std::ofstream& stream() { return out_; }
  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing " + path_.string());
  }

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

constexpr const char* kDetectionHeader = "frame,camera,track,cx,cy,w,h,confidence";
constexpr const char* kGtBaseHeader = "frame,x,y";
constexpr const char* kGtCameraHeader = "frame,camera,cx,cy";
constexpr const char* kTrajectoryHeader = "frame,x,y,updated,spread";

}  // namespace

std::vector<Detection> read_detections(const std::filesystem::path& path) {
  CsvReader reader(path, kDetectionHeader);
  std::vector<Detection> out;
  while (auto row = reader.next()) {
    const auto& [fields, ctx] = *row;
    if (fields.size() != 8) ctx.fail("expected 8 columns, got " + std::to_string(fields.size()));
    Detection d;
    d.frame = parse_frame(fields[0], ctx);
    d.camera = fields[1];
    if (d.camera.empty()) ctx.fail("column camera: must not be empty");
    if (!fields[2].empty()) (void)parse_double(fields[2], ctx, "track");
    d.bbox.cx = parse_double(fields[3], ctx, "cx");
    d.bbox.cy = parse_double(fields[4], ctx, "cy");
    d.bbox.w = parse_double(fields[5], ctx, "w");
    d.bbox.h = parse_double(fields[6], ctx, "h");
    if (!(d.bbox.w > 0.0) || !(d.bbox.h > 0.0)) ctx.fail("columns w,h: must be > 0");
    if (!fields[7].empty()) {
      const double c = parse_double(fields[7], ctx, "confidence");
      if (c < 0.0 || c > 1.0) ctx.fail("column confidence: must lie in [0,1]");
      d.confidence = c;
    }
    out.push_back(std::move(d));
  }
  // Raw files need not be frame-monotone; ingestion sorts, preserving file
  // order within a frame.
  std::stable_sort(out.begin(), out.end(),
                   [](const Detection& a, const Detection& b) { return a.frame < b.frame; });
  return out;
}

void write_detections(const std::filesystem::path& path,
                      const std::vector<Detection>& detections) {
  FileWriter writer(path);
  auto& os = writer.stream();
  os << kDetectionHeader << '\n';
  for (const Detection& d : detections) {
    os << d.frame << ',' << d.camera << ",," << g17(d.bbox.cx) << ',' << g17(d.bbox.cy)
       << ',' << g17(d.bbox.w) << ',' << g17(d.bbox.h) << ',';
    if (d.confidence) os << g17(*d.confidence);
    os << '\n';
  }
  writer.close();
}

Trajectory read_ground_truth_base(const std::filesystem::path& path) {
  CsvReader reader(path, kGtBaseHeader);
  Trajectory out;
  while (auto row = reader.next()) {
    const auto& [fields, ctx] = *row;
    if (fields.size() != 3) ctx.fail("expected 3 columns, got " + std::to_string(fields.size()));
    TrackPoint p;
    p.frame = parse_frame(fields[0], ctx);
    p.point = {parse_double(fields[1], ctx, "x"), parse_double(fields[2], ctx, "y")};
    if (!out.empty() && p.frame <= out.back().frame)
      ctx.fail("column frame: must be strictly increasing, got " +
               std::to_string(p.frame) + " after " + std::to_string(out.back().frame));
    out.push_back(p);
  }
  return out;
}

void write_ground_truth_base(const std::filesystem::path& path, const Trajectory& gt) {
  FileWriter writer(path);
  auto& os = writer.stream();
  os << kGtBaseHeader << '\n';
  for (const TrackPoint& p : gt)
    os << p.frame << ',' << g17(p.point.x) << ',' << g17(p.point.y) << '\n';
  writer.close();
}

PerCameraGroundTruth read_ground_truth_per_camera(const std::filesystem::path& path) {
  CsvReader reader(path, kGtCameraHeader);
  PerCameraGroundTruth out;
  while (auto row = reader.next()) {
    const auto& [fields, ctx] = *row;
    if (fields.size() != 4) ctx.fail("expected 4 columns, got " + std::to_string(fields.size()));
    const int frame = parse_frame(fields[0], ctx);
    const std::string& camera = fields[1];
    if (camera.empty()) ctx.fail("column camera: must not be empty");
    auto& series = out[camera];
    if (!series.empty() && frame <= series.back().first)
      ctx.fail("column frame: must be strictly increasing per camera, got " +
               std::to_string(frame) + " after " + std::to_string(series.back().first));
    series.emplace_back(frame, Point2{parse_double(fields[2], ctx, "cx"),
                                      parse_double(fields[3], ctx, "cy")});
  }
  return out;
}

GroundTruthFile read_ground_truth(const std::filesystem::path& path) {
  const std::string header = read_header(path);
  if (header == kGtBaseHeader) return read_ground_truth_base(path);
  if (header == kGtCameraHeader) return read_ground_truth_per_camera(path);
  throw IoError(path.string() + ": expected ground-truth header '" + kGtBaseHeader +
                "' or '" + kGtCameraHeader + "', got '" + header + "'");
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  CsvReader reader(path, kTrajectoryHeader);
  Trajectory out;
  while (auto row = reader.next()) {
    const auto& [fields, ctx] = *row;
    if (fields.size() != 5) ctx.fail("expected 5 columns, got " + std::to_string(fields.size()));
    TrackPoint p;
    p.frame = parse_frame(fields[0], ctx);
    p.point = {parse_double(fields[1], ctx, "x"), parse_double(fields[2], ctx, "y")};
    if (fields[3] == "1") p.updated = true;
    else if (fields[3] == "0") p.updated = false;
    else ctx.fail("column updated: expected 0 or 1, got '" + fields[3] + "'");
    p.spread = parse_double(fields[4], ctx, "spread");
    if (p.spread < 0.0) ctx.fail("column spread: must be >= 0");
    if (!out.empty() && p.frame <= out.back().frame)
      ctx.fail("column frame: must be strictly increasing, got " +
               std::to_string(p.frame) + " after " + std::to_string(out.back().frame));
    out.push_back(p);
  }
  return out;
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& t) {
  FileWriter writer(path);
  auto& os = writer.stream();
  os << kTrajectoryHeader << '\n';
  for (const TrackPoint& p : t) {
    os << p.frame << ',' << g17(p.point.x) << ',' << g17(p.point.y) << ','
       << (p.updated ? '1' : '0') << ',' << g17(p.spread) << '\n';
  }
  writer.close();
}

Trajectory read_trajectory_like(const std::filesystem::path& path) {
  const std::string header = read_header(path);
  if (header == kTrajectoryHeader) return read_trajectory(path);
  if (header == kGtBaseHeader) return read_ground_truth_base(path);
  throw IoError(path.string() + ": expected header '" + kTrajectoryHeader + "' or '" +
                kGtBaseHeader + "', got '" + header + "'");
}

}  // namespace trackfuse
