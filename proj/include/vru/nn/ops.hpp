#pragma once

#include <utility>
#include <vector>

#include "vru/nn/tensor.hpp"

namespace vru::nn {

// Shape conventions (row-major storage):
//   images   [H, W, C]
//   kernels  [kh, kw, Cin, Cout]   (1-D: [k, Cin, Cout])
//   matrices [rows, cols]
// Convolutions use "same" zero padding: out = ceil(in / stride), with the
// total pad split floor-first (pad_begin = total/2). Pooling is un-padded.

inline int conv_out_dim(int in, int stride) { return (in + stride - 1) / stride; }
inline int pool_out_dim(int in, int size, int stride) { return (in - size) / stride + 1; }

// ---- elementwise / structural ----
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);  // Hadamard
Tensor scale(const Tensor& a, double s);
Tensor relu(const Tensor& a);
Tensor tanh_op(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor reshape(const Tensor& a, std::vector<int> shape);
Tensor concat(const std::vector<Tensor>& parts);        // 1-D result
Tensor slice(const Tensor& a, int start, int len);      // over flat storage, 1-D result
Tensor mean_rows(const Tensor& a);                      // [R,C] -> [C]

// ---- dense / conv / pool ----
Tensor matvec(const Tensor& x, const Tensor& w);                    // [n],[n,m] -> [m]
Tensor fc(const Tensor& x, const Tensor& w, const Tensor& b);       // affine map
Tensor conv2d(const Tensor& input, const Tensor& kernel, int stride,
              const Tensor& bias = {});
Tensor conv1d(const Tensor& input, const Tensor& kernel, int stride,
              const Tensor& bias = {});
Tensor maxpool2d(const Tensor& input, int size, int stride);

// ---- recurrent ----
struct LstmParams {
  Tensor wx;  // [input, 4*hidden], gate order (i, f, g, o)
  Tensor wh;  // [hidden, 4*hidden]
  Tensor b;   // [4*hidden]
};

// Standard cell: sigmoid gates, tanh activations. Returns (h', c').
std::pair<Tensor, Tensor> lstm_cell(const Tensor& x, const Tensor& h, const Tensor& c,
                                    const LstmParams& params);

// ---- losses ----
// weight * (-log softmax(logits)[label]); numerically stable log-sum-exp.
Tensor softmax_ce(const Tensor& logits, int label, double weight = 1.0);
Tensor softmax(const Tensor& logits);
Tensor mse(const Tensor& pred, const Tensor& target);
Tensor l2_penalty(const std::vector<Tensor>& params, double lambda);

}  // namespace vru::nn
