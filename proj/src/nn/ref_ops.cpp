#include "radcom/nn/ref_ops.hpp"

#include <cmath>

namespace radcom::nn::ref {

namespace {
void as4d(const Tensor& t, int& n, int& h, int& w, int& c, bool& batched) {
    if (t.rank() == 4) {
        n = t.shape[0];
        h = t.shape[1];
        w = t.shape[2];
        c = t.shape[3];
        batched = true;
    } else {
        n = 1;
        h = t.shape[0];
        w = t.shape[1];
        c = t.shape[2];
        batched = false;
    }
}
}  // namespace

Tensor conv2d_forward(const Tensor& input, const Tensor& kernels, const Tensor& bias) {
    int n, h, w, c;
    bool batched;
    as4d(input, n, h, w, c, batched);
    const int kh = kernels.shape[0], kw = kernels.shape[1];
    const int cout = kernels.shape[3];
    const int pad_h = kh / 2, pad_w = kw / 2;

    Tensor out(batched ? std::vector<int>{n, h, w, cout} : std::vector<int>{h, w, cout});
    for (int b = 0; b < n; ++b)
        for (int oh = 0; oh < h; ++oh)
            for (int ow = 0; ow < w; ++ow)
                for (int co = 0; co < cout; ++co) {
                    double acc = bias[co];
                    for (int r = 0; r < kh; ++r)
                        for (int s = 0; s < kw; ++s)
                            for (int ci = 0; ci < c; ++ci) {
                                const int ih = oh + r - pad_h;
                                const int iw = ow + s - pad_w;
                                if (ih < 0 || ih >= h || iw < 0 || iw >= w) continue;
                                acc += input[((static_cast<std::int64_t>(b) * h + ih) * w + iw) * c + ci] *
                                       kernels[((static_cast<std::int64_t>(r) * kw + s) * c + ci) * cout + co];
                            }
                    out[((static_cast<std::int64_t>(b) * h + oh) * w + ow) * cout + co] = acc;
                }
    return out;
}

Tensor maxpool2x2_forward(const Tensor& input) {
    int n, h, w, c;
    bool batched;
    as4d(input, n, h, w, c, batched);
    const int oh = h / 2, ow = w / 2;
    Tensor out(batched ? std::vector<int>{n, oh, ow, c} : std::vector<int>{oh, ow, c});
    for (int b = 0; b < n; ++b)
        for (int r = 0; r < oh; ++r)
            for (int col = 0; col < ow; ++col)
                for (int ch = 0; ch < c; ++ch) {
                    double best = -std::numeric_limits<double>::infinity();
                    for (int dr = 0; dr < 2; ++dr)
                        for (int dc = 0; dc < 2; ++dc) {
                            const double v =
                                input[((static_cast<std::int64_t>(b) * h + 2 * r + dr) * w + 2 * col + dc) * c + ch];
                            if (v > best) best = v;
                        }
                    out[((static_cast<std::int64_t>(b) * oh + r) * ow + col) * c + ch] = best;
                }
    return out;
}

Tensor dense_forward(const Tensor& input, const Tensor& weights, const Tensor& bias) {
    const int n = input.shape[0], in = input.shape[1];
    const int out_dim = weights.shape[1];
    Tensor out({n, out_dim});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < out_dim; ++j) {
            double acc = bias[j];
            for (int k = 0; k < in; ++k)
                acc += input[static_cast<std::int64_t>(i) * in + k] * weights[static_cast<std::int64_t>(k) * out_dim + j];
            out[static_cast<std::int64_t>(i) * out_dim + j] = acc;
        }
    return out;
}

Tensor batchnorm_forward(const Tensor& input, const Tensor& gamma, const Tensor& beta, double eps) {
    int features;
    std::int64_t groups;
    if (input.rank() == 2) {
        features = input.shape[1];
        groups = input.shape[0];
    } else {
        features = input.shape[3];
        groups = static_cast<std::int64_t>(input.shape[0]) * input.shape[1] * input.shape[2];
    }
    Tensor out(input.shape);
    for (int f = 0; f < features; ++f) {
        double mean = 0.0;
        for (std::int64_t g = 0; g < groups; ++g) mean += input[g * features + f];
        mean /= static_cast<double>(groups);
        double var = 0.0;
        for (std::int64_t g = 0; g < groups; ++g) {
            const double d = input[g * features + f] - mean;
            var += d * d;
        }
        var /= static_cast<double>(groups);
        const double inv = 1.0 / std::sqrt(var + eps);
        for (std::int64_t g = 0; g < groups; ++g)
            out[g * features + f] = (input[g * features + f] - mean) * inv * gamma[f] + beta[f];
    }
    return out;
}

}  // namespace radcom::nn::ref
