#include "vru/nn/tensor.hpp"

#include <stdexcept>
#include <unordered_set>

namespace vru::nn {

int shape_size(const std::vector<int>& shape) {
  int n = 1;
  for (int d : shape) {
    if (d <= 0) throw std::invalid_argument("tensor shape dimensions must be positive");
    n *= d;
  }
  return n;
}

Tensor Tensor::zeros(std::vector<int> shape, bool requires_grad) {
  return full(std::move(shape), 0.0, requires_grad);
}

Tensor Tensor::full(std::vector<int> shape, double value, bool requires_grad) {
  auto node = std::make_shared<detail::TensorNode>();
  const int n = shape_size(shape);
  node->shape = std::move(shape);
  node->data.assign(static_cast<size_t>(n), value);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::from_values(std::vector<int> shape, std::vector<double> values,
                           bool requires_grad) {
  const int n = shape_size(shape);
  if (static_cast<size_t>(n) != values.size())
    throw std::invalid_argument("from_values: data length does not match shape");
  auto node = std::make_shared<detail::TensorNode>();
  node->shape = std::move(shape);
  node->data = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return from_values({1}, {value}, requires_grad);
}

double Tensor::value() const {
  if (size() != 1) throw std::logic_error("Tensor::value: tensor is not scalar");
  return node_->data[0];
}

double Tensor::grad_value() const {
  if (size() != 1) throw std::logic_error("Tensor::grad_value: tensor is not scalar");
  return node_->grad.empty() ? 0.0 : node_->grad[0];
}

void Tensor::backward() const {
  if (size() != 1) throw std::logic_error("Tensor::backward: root must be scalar");
  if (!node_->requires_grad) return;

  // iterative post-order DFS -> topological order
  std::vector<detail::TensorNode*> topo;
  std::unordered_set<detail::TensorNode*> visited;
  std::vector<std::pair<detail::TensorNode*, size_t>> stack;
  stack.emplace_back(node_.get(), 0);
  visited.insert(node_.get());
  while (!stack.empty()) {
    auto& [n, idx] = stack.back();
    if (idx < n->parents.size()) {
      detail::TensorNode* p = n->parents[idx].get();
      ++idx;
      if (p->requires_grad && !visited.count(p)) {
        visited.insert(p);
        stack.emplace_back(p, 0);
      }
    } else {
      topo.push_back(n);
      stack.pop_back();
    }
  }

  for (auto* n : topo) n->ensure_grad();
  node_->grad[0] = 1.0;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    if ((*it)->backward_fn) (*it)->backward_fn(**it);
  }
}

Tensor make_op(std::vector<int> shape, std::vector<double> data,
               const std::vector<Tensor>& parents,
               std::function<void(detail::TensorNode&)> backward_fn) {
  const int n = shape_size(shape);
  if (static_cast<size_t>(n) != data.size())
    throw std::invalid_argument("make_op: data length does not match shape");
  auto node = std::make_shared<detail::TensorNode>();
  node->shape = std::move(shape);
  node->data = std::move(data);
  bool needs_grad = false;
  for (const auto& p : parents) needs_grad = needs_grad || p.requires_grad();
  node->requires_grad = needs_grad;
  if (needs_grad) {
    node->parents.reserve(parents.size());
    for (const auto& p : parents) node->parents.push_back(p.node());
    node->backward_fn = std::move(backward_fn);
  }
  return Tensor(std::move(node));
}

}  // namespace vru::nn
