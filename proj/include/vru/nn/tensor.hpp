#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace vru::nn {

namespace detail {

struct TensorNode {
  std::vector<int> shape;
  std::vector<double> data;
  std::vector<double> grad;  // allocated on demand, same length as data
  bool requires_grad = false;
  std::vector<std::shared_ptr<TensorNode>> parents;
  // Accumulates this node's grad into its parents' grads.
  std::function<void(TensorNode&)> backward_fn;

  int size() const { return static_cast<int>(data.size()); }
  void ensure_grad() {
    if (grad.size() != data.size()) grad.assign(data.size(), 0.0);
  }
};

}  // namespace detail

// Dense double-precision n-d array with reverse-mode gradient accumulation.
// Value-semantics handle: copies share the underlying node.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::vector<int> shape, bool requires_grad = false);
  static Tensor full(std::vector<int> shape, double value, bool requires_grad = false);
  static Tensor from_values(std::vector<int> shape, std::vector<double> values,
                            bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const std::vector<int>& shape() const { return node_->shape; }
  int size() const { return node_->size(); }
  int dim(int i) const { return node_->shape[static_cast<size_t>(i)]; }
  int ndim() const { return static_cast<int>(node_->shape.size()); }

  double* data() { return node_->data.data(); }
  const double* data() const { return node_->data.data(); }
  std::vector<double>& values() { return node_->data; }
  const std::vector<double>& values() const { return node_->data; }

  double* grad() {
    node_->ensure_grad();
    return node_->grad.data();
  }
  const std::vector<double>& grad_values() const { return node_->grad; }

  bool requires_grad() const { return node_->requires_grad; }

  // Scalar access; throws unless size() == 1.
  double value() const;
  double grad_value() const;

  // Reverse sweep from a scalar root. Gradients accumulate (+=) into every
  // reachable tensor with requires_grad set; call zero_grad on leaves between
  // backward passes.
  void backward() const;

  void zero_grad() {
    node_->ensure_grad();
    std::fill(node_->grad.begin(), node_->grad.end(), 0.0);
  }

  std::shared_ptr<detail::TensorNode> node() const { return node_; }

  explicit Tensor(std::shared_ptr<detail::TensorNode> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<detail::TensorNode> node_;
};

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

// Builds an op result node. Parents and backward_fn are only retained when a
// parent requires grad, so inference graphs stay flat.
Tensor make_op(std::vector<int> shape, std::vector<double> data,
               const std::vector<Tensor>& parents,
               std::function<void(detail::TensorNode&)> backward_fn);

int shape_size(const std::vector<int>& shape);

}  // namespace vru::nn
