#include "radcom/nn/network.hpp"

#include <numeric>

#include "radcom/rng.hpp"

namespace radcom::nn {

std::vector<NamedParam> Network::named_params() const {
    std::vector<NamedParam> out;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        for (auto& p : layers_[i]->named_params())
            out.push_back({std::to_string(i) + "." + p.name, p.value, p.grad});
    }
    return out;
}

void Network::reseed_dropout(std::uint64_t seed) {
    for (std::size_t i = 0; i < layers_.size(); ++i)
        if (layers_[i]->kind() == LayerKind::dropout) layers_[i]->reseed(mix_seed(seed, i));
}

Network build_network(const std::vector<LayerSpec>& specs, const std::vector<int>& input_shape, Rng& init_rng,
                      std::vector<int>* output_shape) {
    Network net;
    std::vector<int> shape = input_shape;  // per-sample

    for (const auto& spec : specs) {
        switch (spec.kind) {
            case LayerKind::conv2d: {
                if (shape.size() != 3)
                    throw std::invalid_argument("build_network: conv2d needs [H,W,C] input, have " +
                                                Tensor::shape_str(shape));
                net.add(std::make_unique<Conv2d>(shape[2], spec.filters, spec.kernel, init_rng));
                shape[2] = spec.filters;  // "same" padding keeps H,W
                break;
            }
            case LayerKind::maxpool2x2: {
                if (shape.size() != 3 || shape[0] / 2 < 1 || shape[1] / 2 < 1)
                    throw std::invalid_argument("build_network: maxpool would produce non-positive extent from " +
                                                Tensor::shape_str(shape));
                shape[0] /= 2;
                shape[1] /= 2;
                net.add(std::make_unique<MaxPool2x2>());
                break;
            }
            case LayerKind::dense: {
                if (shape.size() != 1)
                    throw std::invalid_argument("build_network: dense needs flattened input, have " +
                                                Tensor::shape_str(shape));
                net.add(std::make_unique<Dense>(shape[0], spec.units, init_rng));
                shape[0] = spec.units;
                break;
            }
            case LayerKind::batchnorm:
                net.add(std::make_unique<BatchNorm>(shape.back()));
                break;
            case LayerKind::relu:
                net.add(std::make_unique<ReLU>());
                break;
            case LayerKind::dropout:
                net.add(std::make_unique<Dropout>(spec.rate));
                break;
            case LayerKind::softmax:
                net.add(std::make_unique<Softmax>());
                break;
            case LayerKind::flatten: {
                const int n = static_cast<int>(
                    std::accumulate(shape.begin(), shape.end(), 1, [](int a, int b) { return a * b; }));
                shape = {n};
                net.add(std::make_unique<Flatten>());
                break;
            }
        }
    }
    if (output_shape) *output_shape = shape;
    return net;
}

}  // namespace radcom::nn
