#include "vru/datapipe/annotation_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace vru::datapipe {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail_line(int line, const std::string& what) {
  std::ostringstream os;
  os << "annotations line " << line << ": " << what;
  throw std::runtime_error(os.str());
}

double require_number(const json& j, const char* field, int line) {
  if (!j.contains(field) || !j[field].is_number())
    fail_line(line, std::string("missing or non-numeric field '") + field + "'");
  return j[field].get<double>();
}

std::string require_string(const json& j, const char* field, int line) {
  if (!j.contains(field) || !j[field].is_string())
    fail_line(line, std::string("missing or non-string field '") + field + "'");
  return j[field].get<std::string>();
}

tracking::BBox parse_box(const json& j, int line) {
  if (!j.contains("box") || !j["box"].is_array() || j["box"].size() != 4)
    fail_line(line, "field 'box' must be an array of 4 numbers");
  tracking::BBox b;
  b.cx = j["box"][0].get<double>();
  b.cy = j["box"][1].get<double>();
  b.w = j["box"][2].get<double>();
  b.h = j["box"][3].get<double>();
  if (b.w <= 0 || b.h <= 0) fail_line(line, "field 'box' has non-positive size");
  return b;
}

geometry::PoseFrame parse_pose(const json& j, int line) {
  if (!j.contains("pose") || !j["pose"].is_array() ||
      j["pose"].size() != static_cast<size_t>(geometry::kNumJoints))
    fail_line(line, "field 'pose' must be an array of 17 keypoints");
  geometry::PoseFrame p;
  for (int k = 0; k < geometry::kNumJoints; ++k) {
    const auto& kp = j["pose"][static_cast<size_t>(k)];
    if (!kp.is_array() || kp.size() != 3)
      fail_line(line, "field 'pose': keypoint " + std::to_string(k) + " must be [x,y,v]");
    p[k].x = kp[0].get<double>();
    p[k].y = kp[1].get<double>();
    p[k].v = kp[2].get<double>();
  }
  return p;
}

SceneContext parse_context(const json& j, int line) {
  if (!j.contains("scene") || !j["scene"].is_object())
    fail_line(line, "missing object field 'scene'");
  const json& s = j["scene"];
  SceneContext ctx;
  ctx.traffic_light = require_number(s, "traffic_light", line) != 0;
  ctx.traffic_sign = require_number(s, "traffic_sign", line) != 0;
  ctx.crosswalk = require_number(s, "crosswalk", line) != 0;
  const std::string lane = require_string(s, "lane", line);
  if (lane == "narrow")
    ctx.lane_narrow = true;
  else if (lane == "wide")
    ctx.lane_wide = true;
  else
    fail_line(line, "field 'scene.lane' must be 'narrow' or 'wide'");
  return ctx;
}

ordered_json record_json(int scene_id, int person_id, const TrackEntry& e) {
  ordered_json r;
  r["scene_id"] = scene_id;
  r["frame"] = e.frame;
  r["person_id"] = person_id;
  r["box"] = {e.box.cx, e.box.cy, e.box.w, e.box.h};
  ordered_json pose = ordered_json::array();
  for (int k = 0; k < geometry::kNumJoints; ++k)
    pose.push_back({e.pose[k].x, e.pose[k].y, e.pose[k].v});
  r["pose"] = std::move(pose);
  r["gait"] = to_string(e.labels.gait);
  r["attention"] = to_string(e.labels.attention);
  r["orientation"] = to_string(e.labels.orientation);
  r["distraction"] = to_string(e.labels.distraction);
  r["crossing"] = to_string(e.labels.crossing);
  r["occlusion_fraction"] = e.occlusion_fraction;
  ordered_json scene;
  scene["traffic_light"] = e.context.traffic_light ? 1 : 0;
  scene["traffic_sign"] = e.context.traffic_sign ? 1 : 0;
  scene["crosswalk"] = e.context.crosswalk ? 1 : 0;
  scene["lane"] = e.context.lane_narrow ? "narrow" : "wide";
  r["scene"] = std::move(scene);
  return r;
}

}  // namespace

MaskSequence load_mask(const std::string& base_path) {
  std::ifstream hdr(base_path + ".hdr.json");
  if (!hdr) throw std::runtime_error("cannot open mask header: " + base_path + ".hdr.json");
  json h = json::parse(hdr);
  MaskSequence m;
  m.width = h.at("width").get<int>();
  m.height = h.at("height").get<int>();
  m.frames = h.at("frames").get<int>();
  if (m.width <= 0 || m.height <= 0 || m.frames <= 0)
    throw std::runtime_error("mask header has non-positive dimensions: " + base_path);

  std::ifstream is(base_path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open mask file: " + base_path);
  const size_t n = static_cast<size_t>(m.frames) * m.height * m.width;
  m.data.resize(n);
  is.read(reinterpret_cast<char*>(m.data.data()), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(is.gcount()) != n)
    throw std::runtime_error("mask file truncated: " + base_path);
  for (uint8_t c : m.data)
    if (c >= kNumMaskClasses) throw std::runtime_error("mask class index out of range: " + base_path);
  return m;
}

void save_mask(const std::string& base_path, const MaskSequence& mask) {
  ordered_json h;
  h["width"] = mask.width;
  h["height"] = mask.height;
  h["frames"] = mask.frames;
  std::ofstream hdr(base_path + ".hdr.json");
  if (!hdr) throw std::runtime_error("cannot write mask header: " + base_path + ".hdr.json");
  hdr << h.dump() << "\n";

  std::ofstream os(base_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write mask file: " + base_path);
  os.write(reinterpret_cast<const char*>(mask.data.data()),
           static_cast<std::streamsize>(mask.data.size()));
}

AnnotationDataset ingest_annotations(const std::string& dir) {
  AnnotationDataset ds;

  std::ifstream mf(fs::path(dir) / "manifest.json");
  if (!mf) throw std::runtime_error("cannot open manifest: " + dir + "/manifest.json");
  json manifest = json::parse(mf);
  ds.info.image_w = manifest.at("image_w").get<int>();
  ds.info.image_h = manifest.at("image_h").get<int>();
  ds.info.fps = manifest.at("fps").get<int>();
  ds.info.mask_w = manifest.value("mask_w", 0);
  ds.info.mask_h = manifest.value("mask_h", 0);

  std::ifstream is(fs::path(dir) / "annotations.jsonl");
  if (!is) throw std::runtime_error("cannot open annotations: " + dir + "/annotations.jsonl");

  // (scene, person) -> entries
  std::map<int, std::map<int, PersonTrack>> by_scene;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      fail_line(line_no, std::string("invalid JSON: ") + e.what());
    }
    TrackEntry e;
    const int scene_id = static_cast<int>(require_number(j, "scene_id", line_no));
    const int person_id = static_cast<int>(require_number(j, "person_id", line_no));
    e.frame = static_cast<int>(require_number(j, "frame", line_no));
    e.box = parse_box(j, line_no);
    e.pose = parse_pose(j, line_no);
    try {
      e.labels.gait = gait_from_string(require_string(j, "gait", line_no));
      e.labels.attention = attention_from_string(require_string(j, "attention", line_no));
      e.labels.orientation = orientation_from_string(require_string(j, "orientation", line_no));
      e.labels.distraction = distraction_from_string(require_string(j, "distraction", line_no));
      e.labels.crossing = crossing_from_string(require_string(j, "crossing", line_no));
    } catch (const std::invalid_argument& err) {
      fail_line(line_no, err.what());
    }
    e.occlusion_fraction = require_number(j, "occlusion_fraction", line_no);
    if (e.occlusion_fraction < 0.0 || e.occlusion_fraction > 1.0)
      fail_line(line_no, "field 'occlusion_fraction' must lie in [0,1]");
    e.context = parse_context(j, line_no);

    auto& track = by_scene[scene_id][person_id];
    track.person_id = person_id;
    if (!track.frames.empty() && e.frame <= track.frames.back().frame)
      fail_line(line_no, "field 'frame' must increase strictly within a person track");
    track.frames.push_back(std::move(e));
    ++ds.stats.records;
  }

  for (auto& [scene_id, tracks] : by_scene) {
    Scene scene;
    scene.scene_id = scene_id;
    for (auto& [pid, track] : tracks) {
      ++ds.stats.persons;
      double visible = 0.0;
      for (const auto& e : track.frames) visible += 1.0 - e.occlusion_fraction;
      visible /= static_cast<double>(track.frames.size());
      if (visible < 0.25) {
        ++ds.stats.persons_excluded_occlusion;
        continue;
      }
      scene.tracks.push_back(std::move(track));
    }
    const fs::path mask_base = fs::path(dir) / "masks" / (std::to_string(scene_id) + ".mask");
    if (fs::exists(mask_base)) scene.masks = load_mask(mask_base.string());
    ds.scenes.push_back(std::move(scene));
  }
  return ds;
}

void write_annotations(const std::string& dir, const AnnotationDataset& dataset,
                       const std::map<std::string, std::string>& manifest_extras) {
  fs::create_directories(fs::path(dir) / "masks");

  std::ofstream os(fs::path(dir) / "annotations.jsonl");
  if (!os) throw std::runtime_error("cannot write annotations: " + dir + "/annotations.jsonl");

  std::map<std::string, std::map<std::string, long>> label_counts;
  for (const auto& scene : dataset.scenes) {
    for (const auto& track : scene.tracks) {
      for (const auto& e : track.frames) {
        os << record_json(scene.scene_id, track.person_id, e).dump() << "\n";
        label_counts["gait"][to_string(e.labels.gait)]++;
        label_counts["attention"][to_string(e.labels.attention)]++;
        label_counts["orientation"][to_string(e.labels.orientation)]++;
        label_counts["distraction"][to_string(e.labels.distraction)]++;
        label_counts["crossing"][to_string(e.labels.crossing)]++;
      }
    }
    if (scene.masks.frames > 0) {
      const fs::path base = fs::path(dir) / "masks" / (std::to_string(scene.scene_id) + ".mask");
      save_mask(base.string(), scene.masks);
    }
  }

  ordered_json manifest;
  manifest["image_w"] = dataset.info.image_w;
  manifest["image_h"] = dataset.info.image_h;
  manifest["fps"] = dataset.info.fps;
  manifest["mask_w"] = dataset.info.mask_w;
  manifest["mask_h"] = dataset.info.mask_h;
  manifest["scene_count"] = dataset.scenes.size();
  ordered_json counts;
  for (const auto& [task, per_label] : label_counts) {
    ordered_json c;
    for (const auto& [label, n] : per_label) c[label] = n;
    counts[task] = std::move(c);
  }
  manifest["label_counts"] = std::move(counts);
  for (const auto& [k, v] : manifest_extras) manifest[k] = v;

  std::ofstream mf(fs::path(dir) / "manifest.json");
  if (!mf) throw std::runtime_error("cannot write manifest: " + dir + "/manifest.json");
  mf << manifest.dump(2) << "\n";
}

std::vector<DetectionRecord> read_detections(const std::string& jsonl_path) {
  std::ifstream is(jsonl_path);
  if (!is) throw std::runtime_error("cannot open detections: " + jsonl_path);
  std::vector<DetectionRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      fail_line(line_no, std::string("invalid JSON: ") + e.what());
    }
    DetectionRecord r;
    r.scene_id = static_cast<int>(require_number(j, "scene_id", line_no));
    r.frame = static_cast<int>(require_number(j, "frame", line_no));
    r.box = parse_box(j, line_no);
    r.pose = parse_pose(j, line_no);
    out.push_back(std::move(r));
  }
  return out;
}

void write_tracks_jsonl(const std::string& path, int scene_id,
                        const std::vector<TrackExport>& tracks) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write tracks: " + path);
  for (const auto& t : tracks)
    for (const auto& e : t.frames) os << record_json(scene_id, t.id, e).dump() << "\n";
}

}  // namespace vru::datapipe
