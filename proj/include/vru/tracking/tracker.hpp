#pragma once

#include <vector>

#include "vru/geometry/pose.hpp"
#include "vru/tracking/hungarian.hpp"
#include "vru/tracking/kalman.hpp"

namespace vru::tracking {

struct Detection {
  BBox box;
  geometry::PoseFrame pose;
};

struct TrackFrame {
  int frame = 0;
  BBox box;
  geometry::PoseFrame pose;
};

struct Track {
  int id = 0;
  std::vector<TrackFrame> history;  // frame indices strictly increasing
  int age = 0;                      // frames since creation
  int misses = 0;                   // consecutive unmatched frames
  KalmanState state;
};

struct TrackerConfig {
  double iou_min = 0.3;
  int max_misses = 15;
  KalmanParams kalman;
};

// Single-owner per-scene state machine. Ids are never reused within a scene.
class SceneTracker {
 public:
  explicit SceneTracker(TrackerConfig cfg = {}) : cfg_(cfg) {}

  // Advances tracking by one frame. frame_index must increase strictly.
  void step(int frame_index, const std::vector<Detection>& detections);

  const std::vector<Track>& active_tracks() const { return active_; }
  const std::vector<Track>& retired_tracks() const { return retired_; }

  // Every track ever created, ordered by id.
  std::vector<Track> all_tracks() const;

 private:
  TrackerConfig cfg_;
  std::vector<Track> active_;
  std::vector<Track> retired_;
  int next_id_ = 1;
  int last_frame_ = -1;
  bool started_ = false;
};

}  // namespace vru::tracking
