#pragma once

#include <vector>

#include "vru/nn/tensor.hpp"

namespace vru::nn {

struct AdamConfig {
  double lr = 1e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam over a fixed parameter list. Deterministic: the update
// is a pure function of (params, grads, state).
class Adam {
 public:
  Adam(std::vector<Tensor> params, AdamConfig cfg = {});

  void zero_grad();
  void step();

  long step_count() const { return t_; }
  double lr() const { return cfg_.lr; }
  void set_lr(double lr) { cfg_.lr = lr; }
  const AdamConfig& config() const { return cfg_; }

  const std::vector<Tensor>& params() const { return params_; }
  // first/second moment accumulators, aligned with params()
  const std::vector<std::vector<double>>& moments_m() const { return m_; }
  const std::vector<std::vector<double>>& moments_v() const { return v_; }

  // for checkpoint resume
  void restore(long t, const std::vector<std::vector<double>>& m,
               const std::vector<std::vector<double>>& v);

 private:
  std::vector<Tensor> params_;
  AdamConfig cfg_;
  std::vector<std::vector<double>> m_, v_;
  long t_ = 0;
};

// Scales all gradients so their global L2 norm is at most max_norm.
// Returns the pre-clip norm.
double clip_gradients(std::vector<Tensor>& params, double max_norm);

}  // namespace vru::nn
