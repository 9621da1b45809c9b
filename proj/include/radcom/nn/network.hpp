#pragma once

#include <memory>
#include <vector>

#include "radcom/nn/layers.hpp"

namespace radcom::nn {

// Sequential layer stack. build_network() threads the per-sample shape
// through the specs so conv/dense layers know their fan-in at construction.
class Network {
public:
    Network() = default;
    Network(Network&&) = default;
    Network& operator=(Network&&) = default;

    void add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }

    Tensor forward(const Tensor& input, Mode mode) {
        Tensor x = input;
        for (auto& l : layers_) x = l->forward(x, mode);
        return x;
    }

    Tensor backward(const Tensor& grad_out) {
        Tensor g = grad_out;
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
        return g;
    }

    // Params named "<idx>.<local>", e.g. "0.kernels".
    std::vector<NamedParam> named_params() const;

    void reseed_dropout(std::uint64_t seed);

    std::size_t layer_count() const { return layers_.size(); }
    Layer& layer(std::size_t i) { return *layers_[i]; }

private:
    std::vector<std::unique_ptr<Layer>> layers_;
};

// Builds the stack and reports the per-sample output shape. input_shape is
// per-sample ([H,W,C] or [F]); batch dims are handled at forward time.
Network build_network(const std::vector<LayerSpec>& specs, const std::vector<int>& input_shape, Rng& init_rng,
                      std::vector<int>* output_shape = nullptr);

}  // namespace radcom::nn
