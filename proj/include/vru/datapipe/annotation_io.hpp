#pragma once

#include <map>
#include <string>
#include <vector>

#include "vru/datapipe/types.hpp"

namespace vru::datapipe {

struct IngestStats {
  int records = 0;
  int persons = 0;
  int persons_excluded_occlusion = 0;
};

struct AnnotationDataset {
  DatasetInfo info;
  std::vector<Scene> scenes;  // ordered by scene_id
  IngestStats stats;
};

// Directory layout:
//   <dir>/manifest.json          image/mask dimensions, fps, label counts
//   <dir>/annotations.jsonl      one JSON object per person-frame
//   <dir>/masks/<scene>.mask     raw frames*h*w class-index bytes
//   <dir>/masks/<scene>.mask.hdr.json   {"width","height","frames"}
//
// Ingestion is strict: malformed records and unknown label values raise
// std::runtime_error naming the line and field. Pedestrians whose mean
// visible fraction (1 - occlusion_fraction) is below 0.25 are excluded.
AnnotationDataset ingest_annotations(const std::string& dir);

void write_annotations(const std::string& dir, const AnnotationDataset& dataset,
                       const std::map<std::string, std::string>& manifest_extras = {});

MaskSequence load_mask(const std::string& base_path);
void save_mask(const std::string& base_path, const MaskSequence& mask);

// Lenient per-frame detection reading for the tracker: person_id, labels and
// context are optional; box and pose are required.
struct DetectionRecord {
  int scene_id = 0;
  int frame = 0;
  tracking::BBox box;
  geometry::PoseFrame pose;
};

std::vector<DetectionRecord> read_detections(const std::string& jsonl_path);

// Track output of the `track` command, annotation-record format with the
// assigned ids and neutral labels.
struct TrackExport {
  int id = 0;
  std::vector<TrackEntry> frames;
};

void write_tracks_jsonl(const std::string& path, int scene_id,
                        const std::vector<TrackExport>& tracks);

}  // namespace vru::datapipe
