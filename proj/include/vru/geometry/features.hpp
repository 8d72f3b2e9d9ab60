#pragma once

#include <array>

#include "vru/geometry/pose.hpp"

namespace vru::geometry {

// Leg features for the gait task. Distances in pixels, angles in [0, pi].
struct GaitFeatures {
  double d1 = 0.0;      // right ankle–knee distance
  double d2 = 0.0;      // left ankle–knee distance
  double theta1 = 0.0;  // right knee interior angle (thigh vs shank)
  double theta2 = 0.0;  // left knee interior angle
  double x = 0.0;       // hip-center abscissa
  double y = 0.0;       // hip-center ordinate
  bool theta1_valid = true;  // false when a limb vector degenerates to zero length
  bool theta2_valid = true;

  std::array<double, 6> values() const { return {d1, d2, theta1, theta2, x, y}; }
};

// (x, y, v) for the 7 upper-body joints: nose, eyes, ears, shoulders.
struct AttentionFeatures {
  std::array<double, 21> values{};
};

// Arm angles for the distraction task, all in [0, pi].
struct DistractionFeatures {
  double theta_l = 0.0;         // left elbow flexion
  double theta_r = 0.0;         // right elbow flexion
  double theta_lr_hands = 0.0;  // angle between the two forearm vectors
  double theta_lr_upper = 0.0;  // angle between the two upper-arm vectors
  bool theta_l_valid = true;
  bool theta_r_valid = true;
  bool theta_lr_hands_valid = true;
  bool theta_lr_upper_valid = true;

  std::array<double, 4> values() const { return {theta_l, theta_r, theta_lr_hands, theta_lr_upper}; }
};

GaitFeatures gait_features(const PoseFrame& pose);
AttentionFeatures attention_features(const PoseFrame& pose);
DistractionFeatures distraction_features(const PoseFrame& pose);

// x' = x/width, y' = y/height, visibility unchanged. Throws on non-positive dims.
PoseFrame normalize_pose(const PoseFrame& pose, double width, double height);
PoseFrame denormalize_pose(const PoseFrame& pose, double width, double height);

// Interior angle between two vectors via acos of the clamped normalized dot
// product. A zero-length operand yields 0 with *valid set to false.
double vector_angle(double ax, double ay, double bx, double by, bool* valid);

}  // namespace vru::geometry
