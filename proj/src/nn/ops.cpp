#include "radcom/nn/ops.hpp"

#include <algorithm>
#include <cmath>

namespace radcom::nn {

namespace {

struct Dims4 {
    int n, h, w, c;
    bool batched;
};

Dims4 dims4(const Tensor& t, const char* what) {
    if (t.rank() == 4) return {t.shape[0], t.shape[1], t.shape[2], t.shape[3], true};
    if (t.rank() == 3) return {1, t.shape[0], t.shape[1], t.shape[2], false};
    throw std::invalid_argument(std::string(what) + ": expected rank-3 or rank-4 input, got " + t.shape_str());
}

std::vector<int> shape4(const Dims4& d, int h, int w, int c) {
    if (d.batched) return {d.n, h, w, c};
    return {h, w, c};
}

}  // namespace

Tensor conv2d_forward(const Tensor& input, const Tensor& kernels, const Tensor& bias) {
    const Dims4 d = dims4(input, "conv2d");
    if (kernels.rank() != 4)
        throw std::invalid_argument("conv2d: kernels must be [KH,KW,Cin,Cout], got " + kernels.shape_str());
    const int kh = kernels.shape[0], kw = kernels.shape[1];
    const int cin = kernels.shape[2], cout = kernels.shape[3];
    if (cin != d.c)
        throw std::invalid_argument("conv2d: input channels " + std::to_string(d.c) +
                                    " do not match kernel Cin " + std::to_string(cin) + " (kernels " +
                                    kernels.shape_str() + ", input " + input.shape_str() + ")");
    if (bias.size() != cout)
        throw std::invalid_argument("conv2d: bias length " + std::to_string(bias.size()) +
                                    " does not match Cout " + std::to_string(cout));
    if (d.h < kh || d.w < kw)
        throw std::invalid_argument("conv2d: spatial extents " + input.shape_str() +
                                    " smaller than kernel " + kernels.shape_str());

    const int pad_h = kh / 2, pad_w = kw / 2;
    Tensor out(shape4(d, d.h, d.w, cout));
    const double* x = input.data.data();
    const double* k = kernels.data.data();
    const double* b = bias.data.data();
    double* y = out.data.data();
    const int H = d.h, W = d.w, C = d.c, N = d.n;

    // One thread owns each (n, oh) output row; the per-element reduction
    // order is (r, s, ci), identical for any thread count.
#pragma omp parallel for collapse(2) schedule(static)
    for (int n = 0; n < N; ++n) {
        for (int oh = 0; oh < H; ++oh) {
            std::vector<double> acc(static_cast<std::size_t>(cout));
            const int ih_lo = std::max(0, pad_h - oh);
            const int ih_hi = std::min(kh, H + pad_h - oh);
            for (int ow = 0; ow < W; ++ow) {
                const int iw_lo = std::max(0, pad_w - ow);
                const int iw_hi = std::min(kw, W + pad_w - ow);
                for (int co = 0; co < cout; ++co) acc[static_cast<std::size_t>(co)] = b[co];
                for (int r = ih_lo; r < ih_hi; ++r) {
                    const int ih = oh + r - pad_h;
                    for (int s = iw_lo; s < iw_hi; ++s) {
                        const int iw = ow + s - pad_w;
                        const double* xp = x + ((static_cast<std::int64_t>(n) * H + ih) * W + iw) * C;
                        const double* kbase = k + (static_cast<std::int64_t>(r) * kw + s) * C * cout;
                        for (int ci = 0; ci < C; ++ci) {
                            const double xv = xp[ci];
                            const double* kp = kbase + static_cast<std::int64_t>(ci) * cout;
                            for (int co = 0; co < cout; ++co) acc[static_cast<std::size_t>(co)] += xv * kp[co];
                        }
                    }
                }
                double* yp = y + ((static_cast<std::int64_t>(n) * H + oh) * W + ow) * cout;
                for (int co = 0; co < cout; ++co) yp[co] = acc[static_cast<std::size_t>(co)];
            }
        }
    }
    return out;
}

void conv2d_backward(const Tensor& input, const Tensor& kernels, const Tensor& grad_out,
                     Tensor& grad_kernels, Tensor& grad_bias, Tensor& grad_input) {
    const Dims4 d = dims4(input, "conv2d_backward");
    const int kh = kernels.shape[0], kw = kernels.shape[1];
    const int cin = kernels.shape[2], cout = kernels.shape[3];
    const Dims4 g = dims4(grad_out, "conv2d_backward");
    if (g.n != d.n || g.h != d.h || g.w != d.w || g.c != cout)
        throw std::invalid_argument("conv2d_backward: grad_out " + grad_out.shape_str() +
                                    " inconsistent with input " + input.shape_str());
    const int pad_h = kh / 2, pad_w = kw / 2;
    const int H = d.h, W = d.w, N = d.n;

    grad_kernels = Tensor(kernels.shape);
    grad_bias = Tensor({cout});
    grad_input = Tensor(input.shape);

    const double* x = input.data.data();
    const double* k = kernels.data.data();
    const double* gy = grad_out.data.data();

    // dK: one thread per kernel tap (r, s); rank-1 updates into a local
    // cin x cout block keep the per-slot reduction order (n, oh, ow) fixed.
    double* gk = grad_kernels.data.data();
#pragma omp parallel for collapse(2) schedule(static)
    for (int r = 0; r < kh; ++r) {
        for (int s = 0; s < kw; ++s) {
            std::vector<double> block(static_cast<std::size_t>(cin) * cout, 0.0);
            const int oh_lo = std::max(0, pad_h - r);
            const int oh_hi = std::min(H, H + pad_h - r);
            const int ow_lo = std::max(0, pad_w - s);
            const int ow_hi = std::min(W, W + pad_w - s);
            for (int n = 0; n < N; ++n) {
                for (int oh = oh_lo; oh < oh_hi; ++oh) {
                    const int ih = oh + r - pad_h;
                    for (int ow = ow_lo; ow < ow_hi; ++ow) {
                        const int iw = ow + s - pad_w;
                        const double* xp = x + ((static_cast<std::int64_t>(n) * H + ih) * W + iw) * cin;
                        const double* gp = gy + ((static_cast<std::int64_t>(n) * H + oh) * W + ow) * cout;
                        for (int ci = 0; ci < cin; ++ci) {
                            const double xv = xp[ci];
                            double* row = block.data() + static_cast<std::int64_t>(ci) * cout;
                            for (int co = 0; co < cout; ++co) row[co] += xv * gp[co];
                        }
                    }
                }
            }
            double* dst = gk + (static_cast<std::int64_t>(r) * kw + s) * cin * cout;
            for (std::size_t i = 0; i < block.size(); ++i) dst[i] = block[i];
        }
    }

    double* gb = grad_bias.data.data();
#pragma omp parallel for schedule(static)
    for (int co = 0; co < cout; ++co) {
        double acc = 0.0;
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(N) * H * W; ++i) acc += gy[i * cout + co];
        gb[co] = acc;
    }

    // dX: full correlation with the transposed kernel.
    double* gx = grad_input.data.data();
#pragma omp parallel for collapse(2) schedule(static)
    for (int n = 0; n < N; ++n) {
        for (int ih = 0; ih < H; ++ih) {
            for (int iw = 0; iw < W; ++iw) {
                for (int ci = 0; ci < cin; ++ci) {
                    double acc = 0.0;
                    for (int r = 0; r < kh; ++r) {
                        const int oh = ih - r + pad_h;
                        if (oh < 0 || oh >= H) continue;
                        for (int s = 0; s < kw; ++s) {
                            const int ow = iw - s + pad_w;
                            if (ow < 0 || ow >= W) continue;
                            const double* kp = k + ((static_cast<std::int64_t>(r) * kw + s) * cin + ci) * cout;
                            const double* gp = gy + ((static_cast<std::int64_t>(n) * H + oh) * W + ow) * cout;
                            for (int co = 0; co < cout; ++co) acc += kp[co] * gp[co];
                        }
                    }
                    gx[((static_cast<std::int64_t>(n) * H + ih) * W + iw) * cin + ci] = acc;
                }
            }
        }
    }
}

Tensor maxpool2x2_forward(const Tensor& input, std::vector<std::int64_t>& argmax) {
    const Dims4 d = dims4(input, "maxpool2x2");
    if (d.h < 2 || d.w < 2)
        throw std::invalid_argument("maxpool2x2: spatial extents must be >= 2, got " + input.shape_str());
    const int oh = d.h / 2, ow = d.w / 2;
    Tensor out(shape4(d, oh, ow, d.c));
    argmax.assign(static_cast<std::size_t>(out.size()), 0);
    const double* x = input.data.data();
    double* y = out.data.data();
    std::int64_t* am = argmax.data();
    const int H = d.h, W = d.w, C = d.c, N = d.n;

#pragma omp parallel for collapse(2) schedule(static)
    for (int n = 0; n < N; ++n) {
        for (int r = 0; r < oh; ++r) {
            for (int c = 0; c < ow; ++c) {
                for (int ch = 0; ch < C; ++ch) {
                    std::int64_t best_idx = -1;
                    double best = 0.0;
                    for (int dr = 0; dr < 2; ++dr) {
                        for (int dc = 0; dc < 2; ++dc) {
                            const std::int64_t idx =
                                ((static_cast<std::int64_t>(n) * H + 2 * r + dr) * W + 2 * c + dc) * C + ch;
                            if (best_idx < 0 || x[idx] > best) {
                                best = x[idx];
                                best_idx = idx;
                            }
                        }
                    }
                    const std::int64_t out_idx = ((static_cast<std::int64_t>(n) * oh + r) * ow + c) * C + ch;
                    y[out_idx] = best;
                    am[out_idx] = best_idx;
                }
            }
        }
    }
    return out;
}

Tensor maxpool2x2_backward(const Tensor& grad_out, const std::vector<std::int64_t>& argmax,
                           const std::vector<int>& input_shape) {
    if (argmax.size() != static_cast<std::size_t>(grad_out.size()))
        throw std::invalid_argument("maxpool2x2_backward: argmax map size does not match grad_out");
    Tensor gx(input_shape);
    for (std::int64_t i = 0; i < grad_out.size(); ++i) gx[argmax[static_cast<std::size_t>(i)]] += grad_out[i];
    return gx;
}

Tensor dense_forward(const Tensor& input, const Tensor& weights, const Tensor& bias) {
    if (input.rank() != 2)
        throw std::invalid_argument("dense: expected [N,In] input, got " + input.shape_str());
    const int n = input.shape[0], in = input.shape[1];
    if (weights.rank() != 2 || weights.shape[0] != in)
        throw std::invalid_argument("dense: weights " + weights.shape_str() + " do not match input " +
                                    input.shape_str());
    const int out_dim = weights.shape[1];
    if (bias.size() != out_dim)
        throw std::invalid_argument("dense: bias length " + std::to_string(bias.size()) + " != " +
                                    std::to_string(out_dim));
    Tensor out({n, out_dim});
    const double* x = input.data.data();
    const double* w = weights.data.data();
    const double* b = bias.data.data();
    double* y = out.data.data();

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        double* yr = y + static_cast<std::int64_t>(i) * out_dim;
        const double* xr = x + static_cast<std::int64_t>(i) * in;
        for (int j = 0; j < out_dim; ++j) yr[j] = b[j];
        for (int kk = 0; kk < in; ++kk) {
            const double xv = xr[kk];
            const double* wr = w + static_cast<std::int64_t>(kk) * out_dim;
            for (int j = 0; j < out_dim; ++j) yr[j] += xv * wr[j];
        }
    }
    return out;
}

void dense_backward(const Tensor& input, const Tensor& weights, const Tensor& grad_out,
                    Tensor& grad_weights, Tensor& grad_bias, Tensor& grad_input) {
    const int n = input.shape[0], in = input.shape[1];
    const int out_dim = weights.shape[1];
    if (grad_out.rank() != 2 || grad_out.shape[0] != n || grad_out.shape[1] != out_dim)
        throw std::invalid_argument("dense_backward: grad_out " + grad_out.shape_str() + " inconsistent");

    grad_weights = Tensor(weights.shape);
    grad_bias = Tensor({out_dim});
    grad_input = Tensor(input.shape);

    const double* x = input.data.data();
    const double* w = weights.data.data();
    const double* gy = grad_out.data.data();

    double* gw = grad_weights.data.data();
#pragma omp parallel for schedule(static)
    for (int kk = 0; kk < in; ++kk) {
        double* gwr = gw + static_cast<std::int64_t>(kk) * out_dim;
        for (int i = 0; i < n; ++i) {
            const double xv = x[static_cast<std::int64_t>(i) * in + kk];
            const double* gr = gy + static_cast<std::int64_t>(i) * out_dim;
            for (int j = 0; j < out_dim; ++j) gwr[j] += xv * gr[j];
        }
    }

    double* gb = grad_bias.data.data();
#pragma omp parallel for schedule(static)
    for (int j = 0; j < out_dim; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += gy[static_cast<std::int64_t>(i) * out_dim + j];
        gb[j] = acc;
    }

    double* gx = grad_input.data.data();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        double* gxr = gx + static_cast<std::int64_t>(i) * in;
        const double* gr = gy + static_cast<std::int64_t>(i) * out_dim;
        for (int kk = 0; kk < in; ++kk) {
            const double* wr = w + static_cast<std::int64_t>(kk) * out_dim;
            double acc = 0.0;
            for (int j = 0; j < out_dim; ++j) acc += wr[j] * gr[j];
            gxr[kk] = acc;
        }
    }
}

void feature_moments(const Tensor& input, Tensor& mean, Tensor& var) {
    int features = 0;
    std::int64_t groups = 0;
    if (input.rank() == 2) {
        features = input.shape[1];
        groups = input.shape[0];
    } else if (input.rank() == 4) {
        features = input.shape[3];
        groups = static_cast<std::int64_t>(input.shape[0]) * input.shape[1] * input.shape[2];
    } else {
        throw std::invalid_argument("feature_moments: expected rank-2 or rank-4 input, got " + input.shape_str());
    }
    mean = Tensor({features});
    var = Tensor({features});
    const double* x = input.data.data();

#pragma omp parallel for schedule(static)
    for (int f = 0; f < features; ++f) {
        double s = 0.0;
        for (std::int64_t g = 0; g < groups; ++g) s += x[g * features + f];
        const double m = s / static_cast<double>(groups);
        double v = 0.0;
        for (std::int64_t g = 0; g < groups; ++g) {
            const double d = x[g * features + f] - m;
            v += d * d;
        }
        mean[f] = m;
        var[f] = v / static_cast<double>(groups);
    }
}

Tensor relu_forward(const Tensor& input) {
    Tensor out(input.shape);
    const double* x = input.data.data();
    double* y = out.data.data();
    const std::int64_t n = input.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
    return out;
}

Tensor relu_backward(const Tensor& input, const Tensor& grad_out) {
    require_same_shape(input, grad_out, "relu_backward");
    Tensor gx(input.shape);
    const double* x = input.data.data();
    const double* gy = grad_out.data.data();
    double* g = gx.data.data();
    const std::int64_t n = input.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) g[i] = x[i] > 0.0 ? gy[i] : 0.0;
    return gx;
}

Tensor softmax_forward(const Tensor& logits) {
    if (logits.rank() < 1) throw std::invalid_argument("softmax: scalar input");
    if (!logits.all_finite()) throw std::invalid_argument("softmax: non-finite logits rejected");
    const int classes = logits.shape.back();
    const std::int64_t rows = logits.size() / classes;
    Tensor out(logits.shape);
    const double* x = logits.data.data();
    double* y = out.data.data();

#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) {
        const double* xr = x + r * classes;
        double* yr = y + r * classes;
        double mx = xr[0];
        for (int j = 1; j < classes; ++j) mx = std::max(mx, xr[j]);
        double sum = 0.0;
        for (int j = 0; j < classes; ++j) {
            yr[j] = std::exp(xr[j] - mx);
            sum += yr[j];
        }
        for (int j = 0; j < classes; ++j) yr[j] /= sum;
    }
    return out;
}

Tensor softmax_backward(const Tensor& probs, const Tensor& grad_out) {
    require_same_shape(probs, grad_out, "softmax_backward");
    const int classes = probs.shape.back();
    const std::int64_t rows = probs.size() / classes;
    Tensor gx(probs.shape);
    const double* p = probs.data.data();
    const double* gy = grad_out.data.data();
    double* g = gx.data.data();

#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) {
        const double* pr = p + r * classes;
        const double* gr = gy + r * classes;
        double dot = 0.0;
        for (int j = 0; j < classes; ++j) dot += pr[j] * gr[j];
        double* gxr = g + r * classes;
        for (int j = 0; j < classes; ++j) gxr[j] = pr[j] * (gr[j] - dot);
    }
    return gx;
}

}  // namespace radcom::nn
