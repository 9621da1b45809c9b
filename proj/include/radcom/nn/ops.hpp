#pragma once

#include "radcom/tensor.hpp"

// Parallel kernels for the layer set. Every output element is owned by
// exactly one thread and its reduction runs in a fixed serial order, so
// results are bit-identical for any OpenMP thread count. The serial
// counterparts in ref_ops.hpp are the test oracles and the benchmark
// baseline.
//
// Layout conventions:
//   activations  [N,H,W,C] row-major (rank-3 [H,W,C] treated as N=1)
//   conv kernels [KH,KW,Cin,Cout], bias [Cout]
//   dense        x [N,In], weights [In,Out], bias [Out]

namespace radcom::nn {

// 2-D cross-correlation, zero padding 1 ("same" output size for 3x3).
Tensor conv2d_forward(const Tensor& input, const Tensor& kernels, const Tensor& bias);

void conv2d_backward(const Tensor& input, const Tensor& kernels, const Tensor& grad_out,
                     Tensor& grad_kernels, Tensor& grad_bias, Tensor& grad_input);

// Disjoint 2x2 windows, floor semantics for odd extents. argmax holds the
// flat input index of each window's maximum (first occurrence wins ties).
Tensor maxpool2x2_forward(const Tensor& input, std::vector<std::int64_t>& argmax);

Tensor maxpool2x2_backward(const Tensor& grad_out, const std::vector<std::int64_t>& argmax,
                           const std::vector<int>& input_shape);

Tensor dense_forward(const Tensor& input, const Tensor& weights, const Tensor& bias);

void dense_backward(const Tensor& input, const Tensor& weights, const Tensor& grad_out,
                    Tensor& grad_weights, Tensor& grad_bias, Tensor& grad_input);

// Per-feature moments across batch (and spatial positions for rank-4 input).
// Returned tensors have one entry per feature/channel; variance is biased.
void feature_moments(const Tensor& input, Tensor& mean, Tensor& var);

Tensor relu_forward(const Tensor& input);
Tensor relu_backward(const Tensor& input, const Tensor& grad_out);

// Row-wise stable softmax over the last dimension. Rejects non-finite input.
Tensor softmax_forward(const Tensor& logits);
Tensor softmax_backward(const Tensor& probs, const Tensor& grad_out);

}  // namespace radcom::nn
