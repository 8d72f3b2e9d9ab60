#include "vru/datapipe/windows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vru::datapipe {

std::vector<PersonTrack> filter_tracks(const std::vector<PersonTrack>& tracks,
                                       double min_duration_s, int fps) {
  if (fps <= 0) throw std::invalid_argument("filter_tracks: fps must be positive");
  const double min_frames = min_duration_s * fps;
  std::vector<PersonTrack> kept;
  for (const auto& t : tracks)
    if (static_cast<double>(t.frames.size()) > min_frames) kept.push_back(t);
  return kept;
}

bool pad_track(PersonTrack& track, const WindowConfig& cfg) {
  const int need = cfg.obs_len + cfg.horizon;
  const int len = static_cast<int>(track.frames.size());
  if (len >= need) return true;
  if (static_cast<double>(len) < cfg.pad_min_fraction * need) return false;
  if (len == 0) return false;

  const int deficit = need - len;
  const int front = deficit / 2;
  const int back = deficit - front;

  std::vector<TrackEntry> padded;
  padded.reserve(static_cast<size_t>(need));
  for (int i = front; i >= 1; --i) {
    TrackEntry e = track.frames.front();
    e.frame -= i;
    e.padded = true;
    padded.push_back(std::move(e));
  }
  padded.insert(padded.end(), track.frames.begin(), track.frames.end());
  for (int i = 1; i <= back; ++i) {
    TrackEntry e = track.frames.back();
    e.frame += i;
    e.padded = true;
    padded.push_back(std::move(e));
  }
  track.frames = std::move(padded);
  return true;
}

std::vector<SequenceSample> make_windows(const PersonTrack& track, const MaskSequence* masks,
                                         const WindowConfig& cfg, int scene_id, int mask_h,
                                         int mask_w, WindowStats* stats) {
  if (cfg.stride < 1) throw std::invalid_argument("make_windows: stride must be >= 1");
  const int need = cfg.obs_len + cfg.horizon;

  PersonTrack working = track;
  if (static_cast<int>(working.frames.size()) < need) {
    if (!pad_track(working, cfg)) {
      if (stats) ++stats->tracks_skipped_short;
      return {};
    }
    if (stats) ++stats->tracks_padded;
  }

  const int len = static_cast<int>(working.frames.size());
  std::vector<SequenceSample> out;
  for (int s = 0; s + need <= len; s += cfg.stride) {
    SequenceSample smp;
    smp.scene_id = scene_id;
    smp.person_id = working.person_id;
    smp.start_frame = s;
    smp.obs_len = cfg.obs_len;
    smp.horizon = cfg.horizon;
    smp.mask_h = mask_h;
    smp.mask_w = mask_w;

    smp.poses.resize(static_cast<size_t>(cfg.obs_len) * geometry::kNumJoints * 3);
    smp.boxes.resize(static_cast<size_t>(cfg.obs_len) * 4);
    smp.scene.assign(static_cast<size_t>(cfg.obs_len) * mask_h * mask_w, 0);
    smp.pad_obs.resize(static_cast<size_t>(cfg.obs_len));
    smp.pad_fut.resize(static_cast<size_t>(cfg.horizon));
    smp.future_centers.resize(static_cast<size_t>(cfg.horizon) * 2);

    for (int t = 0; t < cfg.obs_len; ++t) {
      const TrackEntry& e = working.frames[static_cast<size_t>(s + t)];
      for (int k = 0; k < geometry::kNumJoints; ++k) {
        const size_t o = (static_cast<size_t>(t) * geometry::kNumJoints + k) * 3;
        smp.poses[o + 0] = e.pose[k].x;
        smp.poses[o + 1] = e.pose[k].y;
        smp.poses[o + 2] = e.pose[k].v;
      }
      smp.boxes[static_cast<size_t>(t) * 4 + 0] = e.box.cx;
      smp.boxes[static_cast<size_t>(t) * 4 + 1] = e.box.cy;
      smp.boxes[static_cast<size_t>(t) * 4 + 2] = e.box.w;
      smp.boxes[static_cast<size_t>(t) * 4 + 3] = e.box.h;
      smp.pad_obs[static_cast<size_t>(t)] = e.padded ? 1 : 0;
      if (masks && masks->frames > 0) {
        const int frame = std::max(e.frame, 0);
        const uint8_t* grid = masks->frame(frame);
        std::copy(grid, grid + static_cast<size_t>(mask_h) * mask_w,
                  smp.scene.begin() + static_cast<size_t>(t) * mask_h * mask_w);
      }
    }

    const TrackEntry& current = working.frames[static_cast<size_t>(s + cfg.obs_len - 1)];
    smp.labels.gait = current.labels.gait;
    smp.labels.attention = current.labels.attention;
    smp.labels.orientation = current.labels.orientation;
    smp.labels.distraction = current.labels.distraction;
    smp.context = current.context;

    for (int t = 0; t < cfg.horizon; ++t) {
      const TrackEntry& e = working.frames[static_cast<size_t>(s + cfg.obs_len + t)];
      smp.future_centers[static_cast<size_t>(t) * 2 + 0] = e.box.cx;
      smp.future_centers[static_cast<size_t>(t) * 2 + 1] = e.box.cy;
      smp.pad_fut[static_cast<size_t>(t)] = e.padded ? 1 : 0;
    }
    smp.labels.crossing =
        working.frames[static_cast<size_t>(s + need - 1)].labels.crossing;

    out.push_back(std::move(smp));
  }
  if (stats) stats->windows += static_cast<int>(out.size());
  return out;
}

std::vector<SequenceSample> build_samples(const Scene& scene, const WindowConfig& cfg, int mask_h,
                                          int mask_w, WindowStats* stats) {
  std::vector<SequenceSample> out;
  const auto kept = filter_tracks(scene.tracks, cfg.min_duration_s, cfg.fps);
  const MaskSequence* masks = scene.masks.frames > 0 ? &scene.masks : nullptr;
  for (const auto& track : kept) {
    auto windows = make_windows(track, masks, cfg, scene.scene_id, mask_h, mask_w, stats);
    for (auto& w : windows) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace vru::datapipe
