#include "vru/tracking/kalman.hpp"

#include <stdexcept>

namespace vru::tracking {

namespace {

Eigen::Matrix<double, 8, 8> transition(double dt) {
  Eigen::Matrix<double, 8, 8> f = Eigen::Matrix<double, 8, 8>::Identity();
  for (int i = 0; i < 4; ++i) f(i, i + 4) = dt;
  return f;
}

Eigen::Matrix<double, 8, 8> process_noise(const KalmanParams& p, double dt) {
  Eigen::Matrix<double, 8, 8> q = Eigen::Matrix<double, 8, 8>::Zero();
  for (int i = 0; i < 4; ++i) {
    q(i, i) = p.q_pos * dt;
    q(i + 4, i + 4) = p.q_vel * dt;
  }
  return q;
}

}  // namespace

KalmanState kalman_init(const BBox& obs, const KalmanParams& p) {
  KalmanState s;
  s.mean << obs.cx, obs.cy, obs.w, obs.h, 0, 0, 0, 0;
  s.covariance = Eigen::Matrix<double, 8, 8>::Zero();
  for (int i = 0; i < 4; ++i) {
    s.covariance(i, i) = p.p0_pos;
    s.covariance(i + 4, i + 4) = p.p0_vel;
  }
  return s;
}

KalmanState kalman_predict(const KalmanState& state, double dt, const KalmanParams& p) {
  const auto f = transition(dt);
  KalmanState out;
  out.mean = f * state.mean;
  out.covariance = f * state.covariance * f.transpose() + process_noise(p, dt);
  // keep the matrix numerically symmetric across long predict/update chains
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

KalmanState kalman_update(const KalmanState& state, const BBox& obs, const KalmanParams& p) {
  Eigen::Matrix<double, 4, 8> h = Eigen::Matrix<double, 4, 8>::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = 1.0;
  const Eigen::Matrix4d r = Eigen::Matrix4d::Identity() * p.r_obs;

  Eigen::Vector4d z;
  z << obs.cx, obs.cy, obs.w, obs.h;

  const Eigen::Vector4d innovation = z - h * state.mean;
  const Eigen::Matrix4d s = h * state.covariance * h.transpose() + r;

  Eigen::FullPivLU<Eigen::Matrix4d> lu(s);
  if (!lu.isInvertible())
    throw std::runtime_error("kalman_update: innovation covariance is singular");

  const Eigen::Matrix<double, 8, 4> gain = state.covariance * h.transpose() * lu.inverse();

  KalmanState out;
  out.mean = state.mean + gain * innovation;
  // Joseph form keeps the posterior positive-definite
  const Eigen::Matrix<double, 8, 8> ikh = Eigen::Matrix<double, 8, 8>::Identity() - gain * h;
  out.covariance = ikh * state.covariance * ikh.transpose() + gain * r * gain.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

}  // namespace vru::tracking
