#pragma once

#include <vector>

#include "vru/datapipe/types.hpp"

namespace vru::datapipe {

struct WindowConfig {
  int obs_len = 30;  // N: observed frames (15 or 30 typical)
  int horizon = 30;  // future frames
  int stride = 15;   // window start spacing
  int fps = 30;
  double min_duration_s = 1.5;     // tracks must be strictly longer than this
  double pad_min_fraction = 0.5;   // shorter tracks below this fraction of N+horizon are skipped
};

// One training window. Coordinates are raw pixels; normalization happens at
// model input time using the corpus image dimensions.
struct SequenceSample {
  int scene_id = 0;
  int person_id = 0;
  int start_frame = 0;  // track-local start index
  int obs_len = 0;
  int horizon = 0;
  int mask_h = 0;
  int mask_w = 0;

  std::vector<double> poses;           // obs_len*17*3
  std::vector<double> boxes;           // obs_len*4 (cx,cy,w,h)
  std::vector<uint8_t> scene;          // obs_len*mask_h*mask_w class indices
  ActionLabels labels;                 // gait/attention/orientation/distraction at T_current,
                                       // crossing at the last future frame
  std::vector<double> future_centers;  // horizon*2 (cx,cy)
  std::vector<uint8_t> pad_obs;        // 1 where the observed frame was replicated
  std::vector<uint8_t> pad_fut;
  SceneContext context;                // at T_current
};

// Keeps only tracks strictly longer than min_duration_s * fps frames.
std::vector<PersonTrack> filter_tracks(const std::vector<PersonTrack>& tracks,
                                       double min_duration_s, int fps);

// Edge-replicates a short track symmetrically until it reaches obs_len+horizon
// (an odd deficit puts the extra frame at the end). Replicated entries carry
// the padded flag and extrapolated frame indices. Returns false, leaving the
// track unchanged, when the track is shorter than pad_min_fraction*(N+horizon).
bool pad_track(PersonTrack& track, const WindowConfig& cfg);

// Expected number of sliding windows for a track of the given length.
inline int window_count(int track_len, const WindowConfig& cfg) {
  const int need = cfg.obs_len + cfg.horizon;
  if (track_len < need) return 0;
  return (track_len - need) / cfg.stride + 1;
}

struct WindowStats {
  int windows = 0;
  int tracks_skipped_short = 0;
  int tracks_padded = 0;
};

// Cuts sliding windows from one track. masks may be null (zero-filled scene
// channels). Tracks shorter than N+horizon are padded when allowed by
// pad_min_fraction, otherwise skipped and counted.
std::vector<SequenceSample> make_windows(const PersonTrack& track, const MaskSequence* masks,
                                         const WindowConfig& cfg, int scene_id, int mask_h,
                                         int mask_w, WindowStats* stats = nullptr);

// Full pipeline over a scene: duration filter, padding, windowing.
std::vector<SequenceSample> build_samples(const Scene& scene, const WindowConfig& cfg, int mask_h,
                                          int mask_w, WindowStats* stats = nullptr);

}  // namespace vru::datapipe
