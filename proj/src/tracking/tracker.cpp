#include "vru/tracking/tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace vru::tracking {

void SceneTracker::step(int frame_index, const std::vector<Detection>& detections) {
  if (started_ && frame_index <= last_frame_)
    throw std::invalid_argument("SceneTracker::step: frame index must increase strictly");
  const double dt = started_ ? static_cast<double>(frame_index - last_frame_) : 1.0;
  last_frame_ = frame_index;
  started_ = true;

  std::vector<BBox> predicted(active_.size());
  for (size_t i = 0; i < active_.size(); ++i) {
    active_[i].state = kalman_predict(active_[i].state, dt, cfg_.kalman);
    predicted[i] = state_box(active_[i].state);
  }

  std::vector<BBox> det_boxes(detections.size());
  for (size_t j = 0; j < detections.size(); ++j) det_boxes[j] = detections[j].box;

  const Association assoc = associate(predicted, det_boxes, cfg_.iou_min);

  for (const auto& [ti, dj] : assoc.matches) {
    Track& t = active_[static_cast<size_t>(ti)];
    t.state = kalman_update(t.state, detections[static_cast<size_t>(dj)].box, cfg_.kalman);
    t.history.push_back({frame_index, detections[static_cast<size_t>(dj)].box,
                         detections[static_cast<size_t>(dj)].pose});
    t.misses = 0;
    ++t.age;
  }

  for (int ti : assoc.unmatched_tracks) {
    Track& t = active_[static_cast<size_t>(ti)];
    ++t.misses;
    ++t.age;
  }

  // retire before spawning so a reappearing person gets a fresh id
  std::vector<Track> still_active;
  still_active.reserve(active_.size());
  for (auto& t : active_) {
    if (t.misses > cfg_.max_misses)
      retired_.push_back(std::move(t));
    else
      still_active.push_back(std::move(t));
  }
  active_ = std::move(still_active);

  for (int dj : assoc.unmatched_detections) {
    Track t;
    t.id = next_id_++;
    t.state = kalman_init(detections[static_cast<size_t>(dj)].box, cfg_.kalman);
    t.history.push_back({frame_index, detections[static_cast<size_t>(dj)].box,
                         detections[static_cast<size_t>(dj)].pose});
    t.age = 1;
    active_.push_back(std::move(t));
  }
}

std::vector<Track> SceneTracker::all_tracks() const {
  std::vector<Track> all = retired_;
  all.insert(all.end(), active_.begin(), active_.end());
  std::sort(all.begin(), all.end(), [](const Track& a, const Track& b) { return a.id < b.id; });
  return all;
}

}  // namespace vru::tracking
