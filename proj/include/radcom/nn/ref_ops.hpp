#pragma once

#include "radcom/tensor.hpp"

// Serial reference implementations: straight nested loops, no shared code
// with the parallel kernels. Tests compare the two paths; bench_kernels
// times them against each other.

namespace radcom::nn::ref {

Tensor conv2d_forward(const Tensor& input, const Tensor& kernels, const Tensor& bias);

Tensor maxpool2x2_forward(const Tensor& input);

Tensor dense_forward(const Tensor& input, const Tensor& weights, const Tensor& bias);

// (x - mean) / sqrt(var + eps) * gamma + beta with moments computed here.
Tensor batchnorm_forward(const Tensor& input, const Tensor& gamma, const Tensor& beta, double eps);

}  // namespace radcom::nn::ref
