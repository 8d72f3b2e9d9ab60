#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vru/nn/adam.hpp"
#include "vru/nn/tensor.hpp"

namespace vru::nn {

// Versioned binary container of named parameter tensors plus optional Adam
// state. Byte layout (all integers little-endian, floats IEEE-754 f64 LE):
//   magic "VRCK", u32 version = 1
//   u32 meta_count, then meta_count x (string key, string value)
//     where string = u32 length + raw bytes
//   u32 tensor_count, then per tensor:
//     string name, u32 ndim, u32 dims[ndim], f64 data[prod(dims)]
//   u8 has_optimizer; when 1:
//     u64 step_count, f64 lr, f64 beta1, f64 beta2, f64 eps
//     per tensor, in tensor order: f64 m[n], f64 v[n]
struct Checkpoint {
  std::map<std::string, std::string> meta;
  std::vector<NamedTensor> tensors;
  bool has_optimizer = false;
  long opt_step = 0;
  AdamConfig opt_config;
  std::vector<std::vector<double>> opt_m, opt_v;

  const Tensor* find(const std::string& name) const;
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace vru::nn
