#include "vru/nn/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include "vru/util/binio.hpp"

namespace vru::nn {

using namespace vru::util;

const Tensor* Checkpoint::find(const std::string& name) const {
  for (const auto& nt : tensors)
    if (nt.name == name) return &nt.tensor;
  return nullptr;
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_checkpoint: cannot open " + path);

  os.write("VRCK", 4);
  write_u32(os, 1);

  write_u32(os, static_cast<uint32_t>(ckpt.meta.size()));
  for (const auto& [k, v] : ckpt.meta) {
    write_string(os, k);
    write_string(os, v);
  }

  write_u32(os, static_cast<uint32_t>(ckpt.tensors.size()));
  for (const auto& nt : ckpt.tensors) {
    write_string(os, nt.name);
    write_u32(os, static_cast<uint32_t>(nt.tensor.ndim()));
    for (int i = 0; i < nt.tensor.ndim(); ++i)
      write_u32(os, static_cast<uint32_t>(nt.tensor.dim(i)));
    for (double x : nt.tensor.values()) write_f64(os, x);
  }

  write_u8(os, ckpt.has_optimizer ? 1 : 0);
  if (ckpt.has_optimizer) {
    if (ckpt.opt_m.size() != ckpt.tensors.size() || ckpt.opt_v.size() != ckpt.tensors.size())
      throw std::invalid_argument("save_checkpoint: optimizer moments misaligned with tensors");
    write_u64(os, static_cast<uint64_t>(ckpt.opt_step));
    write_f64(os, ckpt.opt_config.lr);
    write_f64(os, ckpt.opt_config.beta1);
    write_f64(os, ckpt.opt_config.beta2);
    write_f64(os, ckpt.opt_config.eps);
    for (size_t k = 0; k < ckpt.tensors.size(); ++k) {
      for (double x : ckpt.opt_m[k]) write_f64(os, x);
      for (double x : ckpt.opt_v[k]) write_f64(os, x);
    }
  }
  if (!os) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_checkpoint: cannot open " + path);

  char magic[4];
  read_exact(is, magic, 4, "magic");
  if (std::string(magic, 4) != "VRCK")
    throw std::runtime_error("load_checkpoint: bad magic in " + path);
  const uint32_t version = read_u32(is, "version");
  if (version != 1) throw std::runtime_error("load_checkpoint: unsupported version");

  Checkpoint ckpt;
  const uint32_t meta_count = read_u32(is, "meta count");
  for (uint32_t i = 0; i < meta_count; ++i) {
    std::string k = read_string(is, "meta key");
    ckpt.meta[k] = read_string(is, "meta value");
  }

  const uint32_t tensor_count = read_u32(is, "tensor count");
  for (uint32_t i = 0; i < tensor_count; ++i) {
    NamedTensor nt;
    nt.name = read_string(is, "tensor name");
    const uint32_t ndim = read_u32(is, "ndim");
    std::vector<int> shape(ndim);
    size_t n = 1;
    for (auto& d : shape) {
      d = static_cast<int>(read_u32(is, "dim"));
      n *= static_cast<size_t>(d);
    }
    std::vector<double> data(n);
    for (auto& x : data) x = read_f64(is, "tensor data");
    nt.tensor = Tensor::from_values(std::move(shape), std::move(data), true);
    ckpt.tensors.push_back(std::move(nt));
  }

  ckpt.has_optimizer = read_u8(is, "optimizer flag") != 0;
  if (ckpt.has_optimizer) {
    ckpt.opt_step = static_cast<long>(read_u64(is, "opt step"));
    ckpt.opt_config.lr = read_f64(is, "opt lr");
    ckpt.opt_config.beta1 = read_f64(is, "opt beta1");
    ckpt.opt_config.beta2 = read_f64(is, "opt beta2");
    ckpt.opt_config.eps = read_f64(is, "opt eps");
    for (const auto& nt : ckpt.tensors) {
      const size_t n = nt.tensor.values().size();
      std::vector<double> m(n), v(n);
      for (auto& x : m) x = read_f64(is, "opt m");
      for (auto& x : v) x = read_f64(is, "opt v");
      ckpt.opt_m.push_back(std::move(m));
      ckpt.opt_v.push_back(std::move(v));
    }
  }
  return ckpt;
}

}  // namespace vru::nn
