#include "radcom/nn/adam.hpp"

#include <cmath>

namespace radcom::nn {

void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads, AdamState& state) {
    if (params.size() != grads.size())
        throw std::invalid_argument("adam_step: " + std::to_string(params.size()) + " params vs " +
                                    std::to_string(grads.size()) + " grads");
    if (state.m.empty()) {
        for (const Tensor* p : params) {
            state.m.emplace_back(p->shape);
            state.v.emplace_back(p->shape);
        }
    }
    if (state.m.size() != params.size())
        throw std::invalid_argument("adam_step: state holds " + std::to_string(state.m.size()) +
                                    " moment tensors for " + std::to_string(params.size()) + " params");
    for (std::size_t i = 0; i < params.size(); ++i) {
        require_same_shape(*params[i], *grads[i], "adam_step");
        require_same_shape(*params[i], state.m[i], "adam_step: moment");
    }

    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));

    for (std::size_t i = 0; i < params.size(); ++i) {
        double* p = params[i]->data.data();
        const double* g = grads[i]->data.data();
        double* m = state.m[i].data.data();
        double* v = state.v[i].data.data();
        const std::int64_t n = params[i]->size();
        const double b1 = state.beta1, b2 = state.beta2, lr = state.lr, eps = state.eps;
#pragma omp parallel for schedule(static)
        for (std::int64_t j = 0; j < n; ++j) {
            m[j] = b1 * m[j] + (1.0 - b1) * g[j];
            v[j] = b2 * v[j] + (1.0 - b2) * g[j] * g[j];
            const double mhat = m[j] / bc1;
            const double vhat = v[j] / bc2;
            p[j] -= lr * mhat / (std::sqrt(vhat) + eps);
        }
    }
}

}  // namespace radcom::nn
