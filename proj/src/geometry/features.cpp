#include "vru/geometry/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vru::geometry {

const char* joint_name(int j) {
  static const char* kNames[kNumJoints] = {
      "nose",       "left_eye",      "right_eye",      "left_ear",   "right_ear",
      "left_shoulder", "right_shoulder", "left_elbow", "right_elbow",
      "left_wrist", "right_wrist",   "left_hip",       "right_hip",
      "left_knee",  "right_knee",    "left_ankle",     "right_ankle"};
  return (j >= 0 && j < kNumJoints) ? kNames[j] : "invalid";
}

double vector_angle(double ax, double ay, double bx, double by, bool* valid) {
  const double na = std::sqrt(ax * ax + ay * ay);
  const double nb = std::sqrt(bx * bx + by * by);
  if (na == 0.0 || nb == 0.0) {
    if (valid) *valid = false;
    return 0.0;
  }
  if (valid) *valid = true;
  const double c = std::clamp((ax * bx + ay * by) / (na * nb), -1.0, 1.0);
  return std::acos(c);
}

static double dist(const Keypoint& a, const Keypoint& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

GaitFeatures gait_features(const PoseFrame& pose) {
  GaitFeatures f;
  const Keypoint& rhip = pose[kRightHip];
  const Keypoint& lhip = pose[kLeftHip];
  const Keypoint& rknee = pose[kRightKnee];
  const Keypoint& lknee = pose[kLeftKnee];
  const Keypoint& rankle = pose[kRightAnkle];
  const Keypoint& lankle = pose[kLeftAnkle];

  f.d1 = dist(rankle, rknee);
  f.d2 = dist(lankle, lknee);
  // interior angle at the knee between thigh (hip->knee) and shank (knee->ankle)
  f.theta1 = vector_angle(rknee.x - rhip.x, rknee.y - rhip.y,
                          rankle.x - rknee.x, rankle.y - rknee.y, &f.theta1_valid);
  f.theta2 = vector_angle(lknee.x - lhip.x, lknee.y - lhip.y,
                          lankle.x - lknee.x, lankle.y - lknee.y, &f.theta2_valid);
  f.x = 0.5 * (lhip.x + rhip.x);
  f.y = 0.5 * (lhip.y + rhip.y);
  return f;
}

AttentionFeatures attention_features(const PoseFrame& pose) {
  // The 7 upper-body joints are exactly the first 7 in COCO order.
  AttentionFeatures f;
  for (int j = 0; j < 7; ++j) {
    f.values[3 * j + 0] = pose[j].x;
    f.values[3 * j + 1] = pose[j].y;
    f.values[3 * j + 2] = pose[j].v;
  }
  return f;
}

DistractionFeatures distraction_features(const PoseFrame& pose) {
  DistractionFeatures f;
  const Keypoint& ls = pose[kLeftShoulder];
  const Keypoint& rs = pose[kRightShoulder];
  const Keypoint& le = pose[kLeftElbow];
  const Keypoint& re = pose[kRightElbow];
  const Keypoint& lw = pose[kLeftWrist];
  const Keypoint& rw = pose[kRightWrist];

  // elbow flexion: upper arm (shoulder->elbow) vs forearm (elbow->wrist)
  f.theta_l = vector_angle(le.x - ls.x, le.y - ls.y, lw.x - le.x, lw.y - le.y, &f.theta_l_valid);
  f.theta_r = vector_angle(re.x - rs.x, re.y - rs.y, rw.x - re.x, rw.y - re.y, &f.theta_r_valid);
  // cross-arm angles: left vs right forearm, left vs right upper arm
  f.theta_lr_hands = vector_angle(lw.x - le.x, lw.y - le.y, rw.x - re.x, rw.y - re.y,
                                  &f.theta_lr_hands_valid);
  f.theta_lr_upper = vector_angle(le.x - ls.x, le.y - ls.y, re.x - rs.x, re.y - rs.y,
                                  &f.theta_lr_upper_valid);
  return f;
}

PoseFrame normalize_pose(const PoseFrame& pose, double width, double height) {
  if (width <= 0.0 || height <= 0.0)
    throw std::invalid_argument("normalize_pose: image dimensions must be positive");
  PoseFrame out;
  for (int j = 0; j < kNumJoints; ++j) {
    out[j].x = pose[j].x / width;
    out[j].y = pose[j].y / height;
    out[j].v = pose[j].v;
  }
  return out;
}

PoseFrame denormalize_pose(const PoseFrame& pose, double width, double height) {
  if (width <= 0.0 || height <= 0.0)
    throw std::invalid_argument("denormalize_pose: image dimensions must be positive");
  PoseFrame out;
  for (int j = 0; j < kNumJoints; ++j) {
    out[j].x = pose[j].x * width;
    out[j].y = pose[j].y * height;
    out[j].v = pose[j].v;
  }
  return out;
}

}  // namespace vru::geometry
