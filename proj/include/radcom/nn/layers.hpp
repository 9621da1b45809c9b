#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "radcom/nn/ops.hpp"
#include "radcom/rng.hpp"
#include "radcom/tensor.hpp"

namespace radcom::nn {

enum class Mode { train, infer };

enum class LayerKind { conv2d, maxpool2x2, dense, batchnorm, relu, dropout, softmax, flatten };

const char* layer_kind_name(LayerKind k);

// Architecture descriptor; networks are built from a list of these.
struct LayerSpec {
    LayerKind kind;
    int filters = 0;      // conv2d
    int kernel = 3;       // conv2d
    int units = 0;        // dense
    double rate = 0.0;    // dropout

    static LayerSpec conv2d(int filters, int kernel = 3) { return {LayerKind::conv2d, filters, kernel, 0, 0.0}; }
    static LayerSpec maxpool2x2() { return {LayerKind::maxpool2x2}; }
    static LayerSpec dense(int units) { return {LayerKind::dense, 0, 3, units, 0.0}; }
    static LayerSpec batchnorm() { return {LayerKind::batchnorm}; }
    static LayerSpec relu() { return {LayerKind::relu}; }
    static LayerSpec dropout(double rate) { return {LayerKind::dropout, 0, 3, 0, rate}; }
    static LayerSpec softmax() { return {LayerKind::softmax}; }
    static LayerSpec flatten() { return {LayerKind::flatten}; }
};

struct NamedParam {
    std::string name;
    Tensor* value;
    Tensor* grad;  // null for non-trainable buffers (batchnorm running stats)
};

class Layer {
public:
    virtual ~Layer() = default;

    // Batched input: [N,H,W,C] for spatial layers, [N,F] for dense-side layers.
    virtual Tensor forward(const Tensor& input, Mode mode) = 0;
    virtual Tensor backward(const Tensor& grad_out) = 0;

    virtual LayerKind kind() const = 0;
    // Trainable parameters followed by buffers; empty for stateless layers.
    virtual std::vector<NamedParam> named_params() { return {}; }
    virtual void reseed(std::uint64_t) {}

protected:
    void require_cache(const char* what) const;
    void take_cache(const char* what);
    bool has_cache_ = false;
};

class Conv2d final : public Layer {
public:
    Conv2d(int in_channels, int out_channels, int kernel, Rng& init_rng);
    Tensor forward(const Tensor& input, Mode mode) override;
    Tensor backward(const Tensor& grad_out) override;
    LayerKind kind() const override { return LayerKind::conv2d; }
    std::vector<NamedParam> named_params() override;

    Tensor kernels, bias;
    Tensor grad_kernels, grad_bias;

private:
    Tensor cached_input_;
};

class MaxPool2x2 final : public Layer {
public:
    Tensor forward(const Tensor& input, Mode mode) override;
    Tensor backward(const Tensor& grad_out) override;
    LayerKind kind() const override { return LayerKind::maxpool2x2; }

private:
    std::vector<std::int64_t> argmax_;
    std::vector<int> input_shape_;
};

class Dense final : public Layer {
public:
    Dense(int in_features, int out_features, Rng& init_rng);
    Tensor forward(const Tensor& input, Mode mode) override;
    Tensor backward(const Tensor& grad_out) override;
    LayerKind kind() const override { return LayerKind::dense; }
    std::vector<NamedParam> named_params() override;

    Tensor weights, bias;
    Tensor grad_weights, grad_bias;

private:
    Tensor cached_input_;
};

// Per-feature batch normalization, eps 1e-5, running-stat momentum 0.9.
// Train mode needs batch size >= 2; inference uses the running stats.
class BatchNorm final : public Layer {
public:
    explicit BatchNorm(int features);
    Tensor forward(const Tensor& input, Mode mode) override;
    Tensor backward(const Tensor& grad_out) override;
    LayerKind kind() const override { return LayerKind::batchnorm; }
    std::vector<NamedParam> named_params() override;

    Tensor gamma, beta;
    Tensor grad_gamma, grad_beta;
    Tensor running_mean, running_var;

    static constexpr double kEps = 1e-5;
    static constexpr double kMomentum = 0.9;

private:
    int features_;
    Mode cached_mode_ = Mode::infer;
    Tensor cached_norm_;   // x-hat
    Tensor cached_inv_std_;
    Tensor cached_centered_;
    std::int64_t cached_groups_ = 0;
};

class ReLU final : public Layer {
public:
    Tensor forward(const Tensor& input, Mode mode) override;
    Tensor backward(const Tensor& grad_out) override;
    LayerKind kind() const override { return LayerKind::relu; }

private:
    Tensor cached_input_;
};

// Inverted dropout: train zeroes with probability p and scales survivors by
// 1/(1-p); inference is the identity. Mask draws come from the layer RNG in
// element order, so reseeding reproduces a mask exactly.
class Dropout final : public Layer {
public:
    explicit Dropout(double rate);
    Tensor forward(const Tensor& input, Mode mode) override;
    Tensor backward(const Tensor& grad_out) override;
    LayerKind kind() const override { return LayerKind::dropout; }
    void reseed(std::uint64_t seed) override { rng_ = Rng(seed); }

    double rate() const { return rate_; }

private:
    double rate_;
    Rng rng_{0};
    std::vector<double> mask_;
    bool cached_identity_ = false;
};

class Softmax final : public Layer {
public:
    Tensor forward(const Tensor& input, Mode mode) override;
    Tensor backward(const Tensor& grad_out) override;
    LayerKind kind() const override { return LayerKind::softmax; }

private:
    Tensor cached_probs_;
};

class Flatten final : public Layer {
public:
    Tensor forward(const Tensor& input, Mode mode) override;
    Tensor backward(const Tensor& grad_out) override;
    LayerKind kind() const override { return LayerKind::flatten; }

private:
    std::vector<int> input_shape_;
};

// -log(probs[label]) with probs clamped below at 1e-12. probs must sum to 1
// within 1e-6.
double cross_entropy(const Tensor& probs, int label);

}  // namespace radcom::nn
