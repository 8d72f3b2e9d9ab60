#include "vru/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace vru::nn {

Adam::Adam(std::vector<Tensor> params, AdamConfig cfg) : params_(std::move(params)), cfg_(cfg) {
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (auto& p : params_) {
    m_.emplace_back(static_cast<size_t>(p.size()), 0.0);
    v_.emplace_back(static_cast<size_t>(p.size()), 0.0);
  }
}

void Adam::zero_grad() {
  for (auto& p : params_) p.zero_grad();
}

void Adam::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (size_t k = 0; k < params_.size(); ++k) {
    Tensor& p = params_[k];
    const double* g = p.grad();
    double* x = p.data();
    auto& m = m_[k];
    auto& v = v_[k];
    for (int i = 0; i < p.size(); ++i) {
      m[static_cast<size_t>(i)] = cfg_.beta1 * m[static_cast<size_t>(i)] + (1.0 - cfg_.beta1) * g[i];
      v[static_cast<size_t>(i)] =
          cfg_.beta2 * v[static_cast<size_t>(i)] + (1.0 - cfg_.beta2) * g[i] * g[i];
      const double mhat = m[static_cast<size_t>(i)] / bc1;
      const double vhat = v[static_cast<size_t>(i)] / bc2;
      x[i] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
    }
  }
}

void Adam::restore(long t, const std::vector<std::vector<double>>& m,
                   const std::vector<std::vector<double>>& v) {
  if (m.size() != params_.size() || v.size() != params_.size())
    throw std::invalid_argument("Adam::restore: moment count mismatch");
  for (size_t k = 0; k < params_.size(); ++k)
    if (m[k].size() != params_[k].values().size() || v[k].size() != params_[k].values().size())
      throw std::invalid_argument("Adam::restore: moment shape mismatch");
  t_ = t;
  m_ = m;
  v_ = v;
}

double clip_gradients(std::vector<Tensor>& params, double max_norm) {
  double sq = 0.0;
  for (auto& p : params) {
    const double* g = p.grad();
    for (int i = 0; i < p.size(); ++i) sq += g[i] * g[i];
  }
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double s = max_norm / norm;
    for (auto& p : params) {
      double* g = p.grad();
      for (int i = 0; i < p.size(); ++i) g[i] *= s;
    }
  }
  return norm;
}

}  // namespace vru::nn
