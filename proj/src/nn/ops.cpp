#include "vru/nn/ops.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vru::nn {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<RowMat>;
using CMapRM = Eigen::Map<const RowMat>;
using MapVec = Eigen::Map<Eigen::VectorXd>;
using CMapVec = Eigen::Map<const Eigen::VectorXd>;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

struct Conv2dDims {
  int h, w, cin, kh, kw, cout;
  int oh, ow;
  int pad_top, pad_left;
  int cols;  // kh*kw*cin
  int rows;  // oh*ow
};

Conv2dDims conv2d_dims(const std::vector<int>& in_shape, const std::vector<int>& k_shape,
                       int stride) {
  require(in_shape.size() == 3, "conv2d: input must be [H,W,C]");
  require(k_shape.size() == 4, "conv2d: kernel must be [kh,kw,Cin,Cout]");
  require(stride >= 1, "conv2d: stride must be >= 1");
  Conv2dDims d;
  d.h = in_shape[0];
  d.w = in_shape[1];
  d.cin = in_shape[2];
  d.kh = k_shape[0];
  d.kw = k_shape[1];
  require(k_shape[2] == d.cin, "conv2d: channel mismatch between input and kernel");
  d.cout = k_shape[3];
  d.oh = conv_out_dim(d.h, stride);
  d.ow = conv_out_dim(d.w, stride);
  const int pad_h = std::max((d.oh - 1) * stride + d.kh - d.h, 0);
  const int pad_w = std::max((d.ow - 1) * stride + d.kw - d.w, 0);
  d.pad_top = pad_h / 2;
  d.pad_left = pad_w / 2;
  d.cols = d.kh * d.kw * d.cin;
  d.rows = d.oh * d.ow;
  return d;
}

void im2col(const double* in, const Conv2dDims& d, int stride, double* m) {
  for (int oy = 0; oy < d.oh; ++oy) {
    for (int ox = 0; ox < d.ow; ++ox) {
      double* row = m + (static_cast<size_t>(oy) * d.ow + ox) * d.cols;
      for (int ky = 0; ky < d.kh; ++ky) {
        const int iy = oy * stride - d.pad_top + ky;
        for (int kx = 0; kx < d.kw; ++kx) {
          const int ix = ox * stride - d.pad_left + kx;
          double* dst = row + (static_cast<size_t>(ky) * d.kw + kx) * d.cin;
          if (iy < 0 || iy >= d.h || ix < 0 || ix >= d.w) {
            std::fill(dst, dst + d.cin, 0.0);
          } else {
            const double* src = in + (static_cast<size_t>(iy) * d.w + ix) * d.cin;
            std::copy(src, src + d.cin, dst);
          }
        }
      }
    }
  }
}

void col2im_add(const double* m, const Conv2dDims& d, int stride, double* gin) {
  for (int oy = 0; oy < d.oh; ++oy) {
    for (int ox = 0; ox < d.ow; ++ox) {
      const double* row = m + (static_cast<size_t>(oy) * d.ow + ox) * d.cols;
      for (int ky = 0; ky < d.kh; ++ky) {
        const int iy = oy * stride - d.pad_top + ky;
        if (iy < 0 || iy >= d.h) continue;
        for (int kx = 0; kx < d.kw; ++kx) {
          const int ix = ox * stride - d.pad_left + kx;
          if (ix < 0 || ix >= d.w) continue;
          const double* src = row + (static_cast<size_t>(ky) * d.kw + kx) * d.cin;
          double* dst = gin + (static_cast<size_t>(iy) * d.w + ix) * d.cin;
          for (int c = 0; c < d.cin; ++c) dst[c] += src[c];
        }
      }
    }
  }
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  std::vector<double> out(a.values());
  CMapVec bv(b.data(), b.size());
  MapVec(out.data(), static_cast<long>(out.size())) += bv;
  auto pa = a.node(), pb = b.node();
  return make_op(a.shape(), std::move(out), {a, b}, [pa, pb](detail::TensorNode& self) {
    if (pa->requires_grad)
      MapVec(pa->grad.data(), pa->size()) += CMapVec(self.grad.data(), self.size());
    if (pb->requires_grad)
      MapVec(pb->grad.data(), pb->size()) += CMapVec(self.grad.data(), self.size());
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  std::vector<double> out(a.values());
  MapVec(out.data(), a.size()) -= CMapVec(b.data(), b.size());
  auto pa = a.node(), pb = b.node();
  return make_op(a.shape(), std::move(out), {a, b}, [pa, pb](detail::TensorNode& self) {
    if (pa->requires_grad)
      MapVec(pa->grad.data(), pa->size()) += CMapVec(self.grad.data(), self.size());
    if (pb->requires_grad)
      MapVec(pb->grad.data(), pb->size()) -= CMapVec(self.grad.data(), self.size());
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  std::vector<double> out(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) out[static_cast<size_t>(i)] = a.data()[i] * b.data()[i];
  auto pa = a.node(), pb = b.node();
  return make_op(a.shape(), std::move(out), {a, b}, [pa, pb](detail::TensorNode& self) {
    for (int i = 0; i < self.size(); ++i) {
      const double g = self.grad[static_cast<size_t>(i)];
      if (pa->requires_grad) pa->grad[static_cast<size_t>(i)] += g * pb->data[static_cast<size_t>(i)];
      if (pb->requires_grad) pb->grad[static_cast<size_t>(i)] += g * pa->data[static_cast<size_t>(i)];
    }
  });
}

Tensor scale(const Tensor& a, double s) {
  std::vector<double> out(a.values());
  MapVec(out.data(), a.size()) *= s;
  auto pa = a.node();
  return make_op(a.shape(), std::move(out), {a}, [pa, s](detail::TensorNode& self) {
    if (pa->requires_grad)
      MapVec(pa->grad.data(), pa->size()) += s * CMapVec(self.grad.data(), self.size());
  });
}

Tensor relu(const Tensor& a) {
  std::vector<double> out(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) out[static_cast<size_t>(i)] = std::max(0.0, a.data()[i]);
  auto pa = a.node();
  return make_op(a.shape(), std::move(out), {a}, [pa](detail::TensorNode& self) {
    if (!pa->requires_grad) return;
    for (int i = 0; i < self.size(); ++i)
      if (pa->data[static_cast<size_t>(i)] > 0.0)
        pa->grad[static_cast<size_t>(i)] += self.grad[static_cast<size_t>(i)];
  });
}

Tensor tanh_op(const Tensor& a) {
  std::vector<double> out(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) out[static_cast<size_t>(i)] = std::tanh(a.data()[i]);
  auto pa = a.node();
  return make_op(a.shape(), std::move(out), {a}, [pa](detail::TensorNode& self) {
    if (!pa->requires_grad) return;
    for (int i = 0; i < self.size(); ++i) {
      const double y = self.data[static_cast<size_t>(i)];
      pa->grad[static_cast<size_t>(i)] += self.grad[static_cast<size_t>(i)] * (1.0 - y * y);
    }
  });
}

Tensor sigmoid(const Tensor& a) {
  std::vector<double> out(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) out[static_cast<size_t>(i)] = 1.0 / (1.0 + std::exp(-a.data()[i]));
  auto pa = a.node();
  return make_op(a.shape(), std::move(out), {a}, [pa](detail::TensorNode& self) {
    if (!pa->requires_grad) return;
    for (int i = 0; i < self.size(); ++i) {
      const double y = self.data[static_cast<size_t>(i)];
      pa->grad[static_cast<size_t>(i)] += self.grad[static_cast<size_t>(i)] * y * (1.0 - y);
    }
  });
}

Tensor reshape(const Tensor& a, std::vector<int> shape) {
  require(shape_size(shape) == a.size(), "reshape: element count mismatch");
  auto pa = a.node();
  return make_op(std::move(shape), a.values(), {a}, [pa](detail::TensorNode& self) {
    if (pa->requires_grad)
      MapVec(pa->grad.data(), pa->size()) += CMapVec(self.grad.data(), self.size());
  });
}

Tensor concat(const std::vector<Tensor>& parts) {
  require(!parts.empty(), "concat: empty input");
  int total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<double> out;
  out.reserve(static_cast<size_t>(total));
  for (const auto& p : parts) out.insert(out.end(), p.values().begin(), p.values().end());
  std::vector<std::shared_ptr<detail::TensorNode>> nodes;
  nodes.reserve(parts.size());
  for (const auto& p : parts) nodes.push_back(p.node());
  return make_op({total}, std::move(out), parts, [nodes](detail::TensorNode& self) {
    size_t off = 0;
    for (const auto& p : nodes) {
      if (p->requires_grad)
        for (size_t i = 0; i < p->data.size(); ++i) p->grad[i] += self.grad[off + i];
      off += p->data.size();
    }
  });
}

Tensor slice(const Tensor& a, int start, int len) {
  require(start >= 0 && len > 0 && start + len <= a.size(), "slice: out of range");
  std::vector<double> out(a.values().begin() + start, a.values().begin() + start + len);
  auto pa = a.node();
  return make_op({len}, std::move(out), {a}, [pa, start](detail::TensorNode& self) {
    if (!pa->requires_grad) return;
    for (int i = 0; i < self.size(); ++i)
      pa->grad[static_cast<size_t>(start + i)] += self.grad[static_cast<size_t>(i)];
  });
}

Tensor mean_rows(const Tensor& a) {
  require(a.ndim() == 2, "mean_rows: input must be [R,C]");
  const int r = a.dim(0), c = a.dim(1);
  std::vector<double> out(static_cast<size_t>(c), 0.0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) out[static_cast<size_t>(j)] += a.data()[i * c + j];
  for (auto& v : out) v /= r;
  auto pa = a.node();
  return make_op({c}, std::move(out), {a}, [pa, r, c](detail::TensorNode& self) {
    if (!pa->requires_grad) return;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        pa->grad[static_cast<size_t>(i * c + j)] += self.grad[static_cast<size_t>(j)] / r;
  });
}

Tensor matvec(const Tensor& x, const Tensor& w) {
  require(x.ndim() == 1 && w.ndim() == 2, "matvec: expects [n] and [n,m]");
  require(x.dim(0) == w.dim(0), "matvec: inner dimension mismatch");
  const int n = w.dim(0), m = w.dim(1);
  std::vector<double> out(static_cast<size_t>(m));
  CMapRM wm(w.data(), n, m);
  MapVec(out.data(), m).noalias() = wm.transpose() * CMapVec(x.data(), n);
  auto px = x.node(), pw = w.node();
  return make_op({m}, std::move(out), {x, w}, [px, pw, n, m](detail::TensorNode& self) {
    CMapVec go(self.grad.data(), m);
    if (px->requires_grad) {
      CMapRM wm(pw->data.data(), n, m);
      MapVec(px->grad.data(), n).noalias() += wm * go;
    }
    if (pw->requires_grad) {
      CMapVec xv(px->data.data(), n);
      MapRM(pw->grad.data(), n, m).noalias() += xv * go.transpose();
    }
  });
}

Tensor fc(const Tensor& x, const Tensor& w, const Tensor& b) {
  require(b.ndim() == 1 && b.dim(0) == w.dim(1), "fc: bias shape mismatch");
  return add(matvec(x, w), b);
}

Tensor conv2d(const Tensor& input, const Tensor& kernel, int stride, const Tensor& bias) {
  const Conv2dDims d = conv2d_dims(input.shape(), kernel.shape(), stride);
  if (bias.defined())
    require(bias.ndim() == 1 && bias.dim(0) == d.cout, "conv2d: bias shape mismatch");

  std::vector<double> m(static_cast<size_t>(d.rows) * d.cols);
  im2col(input.data(), d, stride, m.data());

  std::vector<double> out(static_cast<size_t>(d.rows) * d.cout);
  {
    CMapRM mm(m.data(), d.rows, d.cols);
    CMapRM km(kernel.data(), d.cols, d.cout);
    MapRM om(out.data(), d.rows, d.cout);
    om.noalias() = mm * km;
    if (bias.defined()) om.rowwise() += CMapVec(bias.data(), d.cout).transpose();
  }

  auto pin = input.node(), pk = kernel.node();
  auto pb = bias.defined() ? bias.node() : nullptr;
  std::vector<Tensor> parents = {input, kernel};
  if (bias.defined()) parents.push_back(bias);

  // im2col is recomputed in the backward pass instead of being cached; the
  // batched graphs would otherwise hold one patch matrix per conv per sample.
  return make_op({d.oh, d.ow, d.cout}, std::move(out), parents,
                 [pin, pk, pb, d, stride](detail::TensorNode& self) {
                   CMapRM go(self.grad.data(), d.rows, d.cout);
                   std::vector<double> m(static_cast<size_t>(d.rows) * d.cols);
                   if (pk->requires_grad || pin->requires_grad)
                     im2col(pin->data.data(), d, stride, m.data());
                   if (pk->requires_grad) {
                     CMapRM mm(m.data(), d.rows, d.cols);
                     MapRM(pk->grad.data(), d.cols, d.cout).noalias() += mm.transpose() * go;
                   }
                   if (pin->requires_grad) {
                     std::vector<double> gm(static_cast<size_t>(d.rows) * d.cols);
                     CMapRM km(pk->data.data(), d.cols, d.cout);
                     MapRM(gm.data(), d.rows, d.cols).noalias() = go * km.transpose();
                     col2im_add(gm.data(), d, stride, pin->grad.data());
                   }
                   if (pb && pb->requires_grad)
                     MapVec(pb->grad.data(), d.cout).noalias() += go.colwise().sum().transpose();
                 });
}

Tensor conv1d(const Tensor& input, const Tensor& kernel, int stride, const Tensor& bias) {
  require(input.ndim() == 2, "conv1d: input must be [L,C]");
  require(kernel.ndim() == 3, "conv1d: kernel must be [k,Cin,Cout]");
  Tensor in2 = reshape(input, {input.dim(0), 1, input.dim(1)});
  Tensor k2 = reshape(kernel, {kernel.dim(0), 1, kernel.dim(1), kernel.dim(2)});
  Tensor out = conv2d(in2, k2, stride, bias);
  return reshape(out, {out.dim(0), out.dim(2)});
}

Tensor maxpool2d(const Tensor& input, int size, int stride) {
  require(input.ndim() == 3, "maxpool2d: input must be [H,W,C]");
  require(size >= 1 && stride >= 1, "maxpool2d: size and stride must be >= 1");
  const int h = input.dim(0), w = input.dim(1), c = input.dim(2);
  require(h >= size && w >= size, "maxpool2d: spatial dims smaller than window");
  const int oh = pool_out_dim(h, size, stride), ow = pool_out_dim(w, size, stride);

  std::vector<double> out(static_cast<size_t>(oh) * ow * c);
  std::vector<int> argmax(out.size());
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      for (int ch = 0; ch < c; ++ch) {
        double best = -std::numeric_limits<double>::infinity();
        int best_idx = -1;
        for (int ky = 0; ky < size; ++ky) {
          for (int kx = 0; kx < size; ++kx) {
            const int idx = ((oy * stride + ky) * w + (ox * stride + kx)) * c + ch;
            const double v = input.data()[idx];
            if (v > best) {  // strict: first index wins ties
              best = v;
              best_idx = idx;
            }
          }
        }
        const size_t o = (static_cast<size_t>(oy) * ow + ox) * c + ch;
        out[o] = best;
        argmax[o] = best_idx;
      }
    }
  }

  auto pin = input.node();
  return make_op({oh, ow, c}, std::move(out), {input},
                 [pin, argmax = std::move(argmax)](detail::TensorNode& self) {
                   if (!pin->requires_grad) return;
                   for (size_t i = 0; i < argmax.size(); ++i)
                     pin->grad[static_cast<size_t>(argmax[i])] += self.grad[i];
                 });
}

std::pair<Tensor, Tensor> lstm_cell(const Tensor& x, const Tensor& h, const Tensor& c,
                                    const LstmParams& params) {
  require(params.wx.ndim() == 2 && params.wh.ndim() == 2 && params.b.ndim() == 1,
          "lstm_cell: bad parameter ranks");
  const int hidden = params.wh.dim(0);
  require(params.wx.dim(1) == 4 * hidden && params.wh.dim(1) == 4 * hidden &&
              params.b.dim(0) == 4 * hidden,
          "lstm_cell: gate shapes inconsistent with hidden size");
  require(h.size() == hidden && c.size() == hidden, "lstm_cell: state size mismatch");

  Tensor z = add(add(matvec(x, params.wx), matvec(h, params.wh)), params.b);
  Tensor gi = sigmoid(slice(z, 0, hidden));
  Tensor gf = sigmoid(slice(z, hidden, hidden));
  Tensor gg = tanh_op(slice(z, 2 * hidden, hidden));
  Tensor go = sigmoid(slice(z, 3 * hidden, hidden));
  Tensor c_next = add(mul(gf, c), mul(gi, gg));
  Tensor h_next = mul(go, tanh_op(c_next));
  return {h_next, c_next};
}

Tensor softmax(const Tensor& logits) {
  require(logits.ndim() == 1, "softmax: expects a vector");
  const int k = logits.dim(0);
  double mx = logits.data()[0];
  for (int i = 1; i < k; ++i) mx = std::max(mx, logits.data()[i]);
  std::vector<double> out(static_cast<size_t>(k));
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    out[static_cast<size_t>(i)] = std::exp(logits.data()[i] - mx);
    sum += out[static_cast<size_t>(i)];
  }
  for (auto& v : out) v /= sum;
  auto pa = logits.node();
  return make_op({k}, std::move(out), {logits}, [pa, k](detail::TensorNode& self) {
    if (!pa->requires_grad) return;
    double dot = 0.0;
    for (int i = 0; i < k; ++i) dot += self.grad[static_cast<size_t>(i)] * self.data[static_cast<size_t>(i)];
    for (int i = 0; i < k; ++i)
      pa->grad[static_cast<size_t>(i)] +=
          self.data[static_cast<size_t>(i)] * (self.grad[static_cast<size_t>(i)] - dot);
  });
}

Tensor softmax_ce(const Tensor& logits, int label, double weight) {
  require(logits.ndim() == 1, "softmax_ce: expects a logit vector");
  const int k = logits.dim(0);
  require(k >= 2, "softmax_ce: needs at least two classes");
  require(label >= 0 && label < k, "softmax_ce: label out of range");

  double mx = logits.data()[0];
  for (int i = 1; i < k; ++i) mx = std::max(mx, logits.data()[i]);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += std::exp(logits.data()[i] - mx);
  const double lse = mx + std::log(sum);
  const double loss = weight * (lse - logits.data()[label]);

  auto pa = logits.node();
  return make_op({1}, {loss}, {logits}, [pa, k, label, weight](detail::TensorNode& self) {
    if (!pa->requires_grad) return;
    const double g = self.grad[0] * weight;
    double mx = pa->data[0];
    for (int i = 1; i < k; ++i) mx = std::max(mx, pa->data[static_cast<size_t>(i)]);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += std::exp(pa->data[static_cast<size_t>(i)] - mx);
    for (int i = 0; i < k; ++i) {
      const double p = std::exp(pa->data[static_cast<size_t>(i)] - mx) / sum;
      pa->grad[static_cast<size_t>(i)] += g * (p - (i == label ? 1.0 : 0.0));
    }
  });
}

Tensor mse(const Tensor& pred, const Tensor& target) {
  require_same_shape(pred, target, "mse");
  const int n = pred.size();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = pred.data()[i] - target.data()[i];
    acc += d * d;
  }
  auto pp = pred.node(), pt = target.node();
  return make_op({1}, {acc / n}, {pred, target}, [pp, pt, n](detail::TensorNode& self) {
    const double g = self.grad[0] * 2.0 / n;
    for (int i = 0; i < n; ++i) {
      const double d = pp->data[static_cast<size_t>(i)] - pt->data[static_cast<size_t>(i)];
      if (pp->requires_grad) pp->grad[static_cast<size_t>(i)] += g * d;
      if (pt->requires_grad) pt->grad[static_cast<size_t>(i)] -= g * d;
    }
  });
}

Tensor l2_penalty(const std::vector<Tensor>& params, double lambda) {
  require(!params.empty(), "l2_penalty: empty parameter set");
  double acc = 0.0;
  for (const auto& p : params)
    for (int i = 0; i < p.size(); ++i) acc += p.data()[i] * p.data()[i];
  std::vector<std::shared_ptr<detail::TensorNode>> nodes;
  nodes.reserve(params.size());
  for (const auto& p : params) nodes.push_back(p.node());
  return make_op({1}, {lambda * acc}, params, [nodes, lambda](detail::TensorNode& self) {
    const double g = self.grad[0] * 2.0 * lambda;
    for (const auto& p : nodes) {
      if (!p->requires_grad) continue;
      for (size_t i = 0; i < p->data.size(); ++i) p->grad[i] += g * p->data[i];
    }
  });
}

}  // namespace vru::nn
