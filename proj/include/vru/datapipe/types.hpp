#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vru/geometry/pose.hpp"
#include "vru/tracking/bbox.hpp"

namespace vru::datapipe {

// Class codes: the positive/binary-1 class is the "action present" one, which
// is also the positive class for AP reporting.
enum class Gait : uint8_t { kStanding = 0, kWalking = 1 };
enum class Attention : uint8_t { kNotLooking = 0, kLooking = 1 };
enum class Orientation : uint8_t { kLeft = 0, kRight = 1, kFront = 2, kBack = 3 };
enum class Distraction : uint8_t { kNotPhoning = 0, kPhoning = 1 };
enum class Crossing : uint8_t { kNotCrossing = 0, kCrossing = 1 };

struct ActionLabels {
  Gait gait = Gait::kStanding;
  Attention attention = Attention::kNotLooking;
  Orientation orientation = Orientation::kFront;
  Distraction distraction = Distraction::kNotPhoning;
  Crossing crossing = Crossing::kNotCrossing;
};

std::string to_string(Gait v);
std::string to_string(Attention v);
std::string to_string(Orientation v);
std::string to_string(Distraction v);
std::string to_string(Crossing v);

// Parsers throw std::invalid_argument naming the field on unknown values.
Gait gait_from_string(const std::string& s);
Attention attention_from_string(const std::string& s);
Orientation orientation_from_string(const std::string& s);
Distraction distraction_from_string(const std::string& s);
Crossing crossing_from_string(const std::string& s);

struct SceneContext {
  bool traffic_light = false;
  bool traffic_sign = false;
  bool crosswalk = false;
  bool lane_narrow = false;  // lane_narrow and lane_wide are mutually exclusive
  bool lane_wide = false;
};

// Scene-mask classes.
enum MaskClass : uint8_t {
  kRoad = 0,
  kCar = 1,
  kPedestrian = 2,
  kSidewalk = 3,
  kTrafficSign = 4,
};
inline constexpr int kNumMaskClasses = 5;

// Per-scene stack of 8-bit class-index grids. A sequence shorter than the
// scene broadcasts its last grid to later frames (static scenes store one).
struct MaskSequence {
  int width = 0;
  int height = 0;
  int frames = 0;
  std::vector<uint8_t> data;  // frames * height * width, row-major per frame

  const uint8_t* frame(int i) const {
    const int f = i < frames ? (i < 0 ? 0 : i) : frames - 1;
    return data.data() + static_cast<size_t>(f) * height * width;
  }
};

struct TrackEntry {
  int frame = 0;
  tracking::BBox box;
  geometry::PoseFrame pose;
  ActionLabels labels;
  double occlusion_fraction = 0.0;
  SceneContext context;
  bool padded = false;
};

struct PersonTrack {
  int person_id = 0;
  std::vector<TrackEntry> frames;  // frame indices strictly increasing
};

struct Scene {
  int scene_id = 0;
  std::vector<PersonTrack> tracks;
  MaskSequence masks;
};

// Corpus-level constants shared by every scene in a dataset.
struct DatasetInfo {
  int image_w = 0;
  int image_h = 0;
  int fps = 30;
  int mask_w = 0;
  int mask_h = 0;
};

}  // namespace vru::datapipe
