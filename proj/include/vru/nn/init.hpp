#pragma once

#include "vru/nn/tensor.hpp"
#include "vru/util/rng.hpp"

namespace vru::nn {

// Fan-in-scaled uniform: U(-sqrt(1/fan_in), +sqrt(1/fan_in)).
inline Tensor uniform_fan_in(std::vector<int> shape, int fan_in, util::Rng& rng) {
  const double bound = std::sqrt(1.0 / fan_in);
  const int n = shape_size(shape);
  std::vector<double> v(static_cast<size_t>(n));
  for (auto& x : v) x = rng.uniform(-bound, bound);
  return Tensor::from_values(std::move(shape), std::move(v), true);
}

// Small-uniform LSTM init, U(-0.08, 0.08).
inline Tensor uniform_small(std::vector<int> shape, util::Rng& rng) {
  const int n = shape_size(shape);
  std::vector<double> v(static_cast<size_t>(n));
  for (auto& x : v) x = rng.uniform(-0.08, 0.08);
  return Tensor::from_values(std::move(shape), std::move(v), true);
}

// LSTM bias: zeros except forget gate at 1.0 (gate order i, f, g, o).
inline Tensor lstm_bias(int hidden) {
  std::vector<double> v(static_cast<size_t>(4 * hidden), 0.0);
  for (int i = hidden; i < 2 * hidden; ++i) v[static_cast<size_t>(i)] = 1.0;
  return Tensor::from_values({4 * hidden}, std::move(v), true);
}

}  // namespace vru::nn
