#pragma once

#include <Eigen/Dense>

#include "vru/tracking/bbox.hpp"

namespace vru::tracking {

// Constant-velocity filter over (cx, cy, w, h) and their per-frame rates.
struct KalmanState {
  Eigen::Matrix<double, 8, 1> mean = Eigen::Matrix<double, 8, 1>::Zero();
  Eigen::Matrix<double, 8, 8> covariance = Eigen::Matrix<double, 8, 8>::Identity();
};

struct KalmanParams {
  double q_pos = 1.0;    // process noise, position/size terms (px^2 per frame)
  double q_vel = 0.25;   // process noise, velocity terms
  double r_obs = 1.0;    // measurement noise (px^2)
  double p0_pos = 10.0;  // initial position/size variance
  double p0_vel = 100.0; // initial velocity variance
};

KalmanState kalman_init(const BBox& obs, const KalmanParams& p = {});

// Advance dt frames: mean <- F mean, covariance <- F P F^T + Q.
KalmanState kalman_predict(const KalmanState& state, double dt, const KalmanParams& p = {});

// Standard measurement update with H selecting (cx, cy, w, h).
// Throws std::runtime_error when the innovation covariance is not invertible.
KalmanState kalman_update(const KalmanState& state, const BBox& obs, const KalmanParams& p = {});

inline BBox state_box(const KalmanState& s) {
  return BBox{s.mean(0), s.mean(1), s.mean(2), s.mean(3)};
}

}  // namespace vru::tracking
