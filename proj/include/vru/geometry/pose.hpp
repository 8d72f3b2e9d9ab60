#pragma once

#include <array>
#include <cstddef>

namespace vru::geometry {

// COCO 17-joint order used everywhere in this project.
enum Joint : int {
  kNose = 0,
  kLeftEye = 1,
  kRightEye = 2,
  kLeftEar = 3,
  kRightEar = 4,
  kLeftShoulder = 5,
  kRightShoulder = 6,
  kLeftElbow = 7,
  kRightElbow = 8,
  kLeftWrist = 9,
  kRightWrist = 10,
  kLeftHip = 11,
  kRightHip = 12,
  kLeftKnee = 13,
  kRightKnee = 14,
  kLeftAnkle = 15,
  kRightAnkle = 16,
};

inline constexpr int kNumJoints = 17;

struct Keypoint {
  double x = 0.0;  // pixel abscissa
  double y = 0.0;  // pixel ordinate
  double v = 0.0;  // visibility score in [0,1]
};

struct PoseFrame {
  std::array<Keypoint, kNumJoints> joints{};

  Keypoint& operator[](int j) { return joints[static_cast<size_t>(j)]; }
  const Keypoint& operator[](int j) const { return joints[static_cast<size_t>(j)]; }
};

// Left/right counterpart of a joint; the nose maps to itself.
inline int mirror_joint(int j) {
  switch (j) {
    case kNose: return kNose;
    case kLeftEye: return kRightEye;
    case kRightEye: return kLeftEye;
    case kLeftEar: return kRightEar;
    case kRightEar: return kLeftEar;
    case kLeftShoulder: return kRightShoulder;
    case kRightShoulder: return kLeftShoulder;
    case kLeftElbow: return kRightElbow;
    case kRightElbow: return kLeftElbow;
    case kLeftWrist: return kRightWrist;
    case kRightWrist: return kLeftWrist;
    case kLeftHip: return kRightHip;
    case kRightHip: return kLeftHip;
    case kLeftKnee: return kRightKnee;
    case kRightKnee: return kLeftKnee;
    case kLeftAnkle: return kRightAnkle;
    case kRightAnkle: return kLeftAnkle;
    default: return j;
  }
}

const char* joint_name(int j);

}  // namespace vru::geometry
