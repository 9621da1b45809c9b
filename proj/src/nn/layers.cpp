#include "radcom/nn/layers.hpp"

#include <cmath>

namespace radcom::nn {

const char* layer_kind_name(LayerKind k) {
    switch (k) {
        case LayerKind::conv2d: return "conv2d";
        case LayerKind::maxpool2x2: return "maxpool2x2";
        case LayerKind::dense: return "dense";
        case LayerKind::batchnorm: return "batchnorm";
        case LayerKind::relu: return "relu";
        case LayerKind::dropout: return "dropout";
        case LayerKind::softmax: return "softmax";
        case LayerKind::flatten: return "flatten";
    }
    return "?";
}

void Layer::require_cache(const char* what) const {
    if (!has_cache_)
        throw std::logic_error(std::string(what) + ": backward called without a preceding forward pass");
}

void Layer::take_cache(const char* what) {
    require_cache(what);
    has_cache_ = false;
}

namespace {
// Fan-in-scaled uniform init, bound sqrt(6/fan_in).
void init_uniform(Tensor& t, int fan_in, Rng& rng) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (auto& v : t.data) v = rng.uniform(-bound, bound);
}
}  // namespace

// ---------------------------------------------------------------- Conv2d

Conv2d::Conv2d(int in_channels, int out_channels, int kernel, Rng& init_rng)
    : kernels({kernel, kernel, in_channels, out_channels}), bias({out_channels}) {
    init_uniform(kernels, kernel * kernel * in_channels, init_rng);
}

Tensor Conv2d::forward(const Tensor& input, Mode) {
    cached_input_ = input;
    has_cache_ = true;
    return conv2d_forward(input, kernels, bias);
}

Tensor Conv2d::backward(const Tensor& grad_out) {
    take_cache("conv2d");
    Tensor grad_input;
    conv2d_backward(cached_input_, kernels, grad_out, grad_kernels, grad_bias, grad_input);
    return grad_input;
}

std::vector<NamedParam> Conv2d::named_params() {
    return {{"kernels", &kernels, &grad_kernels}, {"bias", &bias, &grad_bias}};
}

// ------------------------------------------------------------ MaxPool2x2

Tensor MaxPool2x2::forward(const Tensor& input, Mode) {
    input_shape_ = input.shape;
    has_cache_ = true;
    return maxpool2x2_forward(input, argmax_);
}

Tensor MaxPool2x2::backward(const Tensor& grad_out) {
    take_cache("maxpool2x2");
    return maxpool2x2_backward(grad_out, argmax_, input_shape_);
}

// ----------------------------------------------------------------- Dense

Dense::Dense(int in_features, int out_features, Rng& init_rng)
    : weights({in_features, out_features}), bias({out_features}) {
    init_uniform(weights, in_features, init_rng);
}

Tensor Dense::forward(const Tensor& input, Mode) {
    cached_input_ = input;
    has_cache_ = true;
    return dense_forward(input, weights, bias);
}

Tensor Dense::backward(const Tensor& grad_out) {
    take_cache("dense");
    Tensor grad_input;
    dense_backward(cached_input_, weights, grad_out, grad_weights, grad_bias, grad_input);
    return grad_input;
}

std::vector<NamedParam> Dense::named_params() {
    return {{"weights", &weights, &grad_weights}, {"bias", &bias, &grad_bias}};
}

// ------------------------------------------------------------- BatchNorm

BatchNorm::BatchNorm(int features)
    : gamma(Tensor::full({features}, 1.0)),
      beta({features}),
      running_mean({features}),
      running_var(Tensor::full({features}, 1.0)),
      features_(features) {}

Tensor BatchNorm::forward(const Tensor& input, Mode mode) {
    const int feat = input.shape.back();
    if (feat != features_)
        throw std::invalid_argument("batchnorm: input features " + std::to_string(feat) + " != " +
                                    std::to_string(features_));
    const std::int64_t groups = input.size() / feat;
    Tensor mean, var;
    if (mode == Mode::train) {
        if (input.shape[0] < 2)
            throw std::invalid_argument("batchnorm: train mode requires batch size >= 2 (zero-variance hazard)");
        feature_moments(input, mean, var);
        for (int f = 0; f < features_; ++f) {
            running_mean[f] = kMomentum * running_mean[f] + (1.0 - kMomentum) * mean[f];
            running_var[f] = kMomentum * running_var[f] + (1.0 - kMomentum) * var[f];
        }
    } else {
        mean = running_mean;
        var = running_var;
    }

    Tensor out(input.shape);
    cached_norm_ = Tensor(input.shape);
    cached_centered_ = Tensor(input.shape);
    cached_inv_std_ = Tensor({features_});
    for (int f = 0; f < features_; ++f) cached_inv_std_[f] = 1.0 / std::sqrt(var[f] + kEps);

    const double* x = input.data.data();
    double* y = out.data.data();
    double* xn = cached_norm_.data.data();
    double* xc = cached_centered_.data.data();
#pragma omp parallel for schedule(static)
    for (int f = 0; f < features_; ++f) {
        const double m = mean[f], inv = cached_inv_std_[f], g = gamma[f], b = beta[f];
        for (std::int64_t i = 0; i < groups; ++i) {
            const std::int64_t idx = i * feat + f;
            xc[idx] = x[idx] - m;
            xn[idx] = xc[idx] * inv;
            y[idx] = xn[idx] * g + b;
        }
    }
    cached_mode_ = mode;
    cached_groups_ = groups;
    has_cache_ = true;
    return out;
}

Tensor BatchNorm::backward(const Tensor& grad_out) {
    take_cache("batchnorm");
    const int feat = features_;
    const std::int64_t groups = cached_groups_;
    const double m_inv = 1.0 / static_cast<double>(groups);

    Tensor gx(grad_out.shape);
    grad_gamma = Tensor({feat});
    grad_beta = Tensor({feat});

    const double* gy = grad_out.data.data();
    const double* xn = cached_norm_.data.data();
    double* g = gx.data.data();

#pragma omp parallel for schedule(static)
    for (int f = 0; f < feat; ++f) {
        double sum_gy = 0.0, sum_gy_xn = 0.0;
        for (std::int64_t i = 0; i < groups; ++i) {
            const std::int64_t idx = i * feat + f;
            sum_gy += gy[idx];
            sum_gy_xn += gy[idx] * xn[idx];
        }
        grad_beta[f] = sum_gy;
        grad_gamma[f] = sum_gy_xn;
        const double scale = gamma[f] * cached_inv_std_[f];
        if (cached_mode_ == Mode::train) {
            for (std::int64_t i = 0; i < groups; ++i) {
                const std::int64_t idx = i * feat + f;
                g[idx] = scale * (gy[idx] - m_inv * sum_gy - xn[idx] * m_inv * sum_gy_xn);
            }
        } else {
            for (std::int64_t i = 0; i < groups; ++i) {
                const std::int64_t idx = i * feat + f;
                g[idx] = scale * gy[idx];
            }
        }
    }
    return gx;
}

std::vector<NamedParam> BatchNorm::named_params() {
    return {{"gamma", &gamma, &grad_gamma},
            {"beta", &beta, &grad_beta},
            {"running_mean", &running_mean, nullptr},
            {"running_var", &running_var, nullptr}};
}

// ------------------------------------------------------------------ ReLU

Tensor ReLU::forward(const Tensor& input, Mode) {
    cached_input_ = input;
    has_cache_ = true;
    return relu_forward(input);
}

Tensor ReLU::backward(const Tensor& grad_out) {
    take_cache("relu");
    return relu_backward(cached_input_, grad_out);
}

// --------------------------------------------------------------- Dropout

Dropout::Dropout(double rate) : rate_(rate) {
    if (rate < 0.0 || rate >= 1.0)
        throw std::invalid_argument("dropout: rate must be in [0,1), got " + std::to_string(rate));
}

Tensor Dropout::forward(const Tensor& input, Mode mode) {
    has_cache_ = true;
    if (mode == Mode::infer || rate_ == 0.0) {
        cached_identity_ = true;
        return input;
    }
    cached_identity_ = false;
    const double keep = 1.0 - rate_;
    const double scale = 1.0 / keep;
    mask_.resize(static_cast<std::size_t>(input.size()));
    for (auto& m : mask_) m = rng_.uniform() < rate_ ? 0.0 : scale;

    Tensor out(input.shape);
    const double* x = input.data.data();
    const double* mk = mask_.data();
    double* y = out.data.data();
    const std::int64_t n = input.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) y[i] = x[i] * mk[i];
    return out;
}

Tensor Dropout::backward(const Tensor& grad_out) {
    take_cache("dropout");
    if (cached_identity_) return grad_out;
    Tensor gx(grad_out.shape);
    const double* gy = grad_out.data.data();
    const double* mk = mask_.data();
    double* g = gx.data.data();
    const std::int64_t n = grad_out.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) g[i] = gy[i] * mk[i];
    return gx;
}

// --------------------------------------------------------------- Softmax

Tensor Softmax::forward(const Tensor& input, Mode) {
    cached_probs_ = softmax_forward(input);
    has_cache_ = true;
    return cached_probs_;
}

Tensor Softmax::backward(const Tensor& grad_out) {
    take_cache("softmax");
    return softmax_backward(cached_probs_, grad_out);
}

// --------------------------------------------------------------- Flatten

Tensor Flatten::forward(const Tensor& input, Mode) {
    if (input.rank() < 2) throw std::invalid_argument("flatten: expected batched input, got " + input.shape_str());
    input_shape_ = input.shape;
    has_cache_ = true;
    int per_sample = 1;
    for (std::size_t i = 1; i < input.shape.size(); ++i) per_sample *= input.shape[i];
    return input.reshaped({input.shape[0], per_sample});
}

Tensor Flatten::backward(const Tensor& grad_out) {
    take_cache("flatten");
    return grad_out.reshaped(input_shape_);
}

// ---------------------------------------------------------- cross entropy

double cross_entropy(const Tensor& probs, int label) {
    const std::int64_t n = probs.size();
    if (label < 0 || label >= n)
        throw std::invalid_argument("cross_entropy: label " + std::to_string(label) + " out of range [0," +
                                    std::to_string(n) + ")");
    double sum = 0.0;
    for (double p : probs.data) sum += p;
    if (std::abs(sum - 1.0) > 1e-6)
        throw std::invalid_argument("cross_entropy: probabilities sum to " + std::to_string(sum));
    const double p = std::max(probs[label], 1e-12);
    return -std::log(p);
}

}  // namespace radcom::nn
