#pragma once

#include <cstdint>
#include <vector>

#include "radcom/tensor.hpp"

namespace radcom::nn {

// Bias-corrected Adam over a fixed list of parameter tensors. Moment
// accumulators are created lazily on the first step, shape-congruent with
// their parameters; t advances by exactly 1 per step.
struct AdamState {
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::int64_t t = 0;
    std::vector<Tensor> m;
    std::vector<Tensor> v;
};

void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads, AdamState& state);

}  // namespace radcom::nn
