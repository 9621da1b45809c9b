// Times the parallel kernels against the serial reference implementations at
// workbench shapes (batch 128, 16x16 activations).

#include <chrono>
#include <cstdio>
#include <functional>

#include "radcom/nn/ops.hpp"
#include "radcom/nn/ref_ops.hpp"
#include "radcom/rng.hpp"

using namespace radcom;

namespace {

Tensor random_tensor(std::vector<int> shape, Rng& rng) {
    Tensor t(std::move(shape));
    for (auto& v : t.data) v = rng.uniform(-1.0, 1.0);
    return t;
}

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double ref_ms, double par_ms) {
    std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, ref_ms, par_ms, ref_ms / par_ms);
}

}  // namespace

int main() {
    Rng rng(42);
    const int batch = 128;

    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        Tensor x = random_tensor({batch, 16, 16, 8}, rng);
        Tensor k = random_tensor({3, 3, 8, 8}, rng);
        Tensor b = random_tensor({8}, rng);
        const double ref = time_ms([&] { nn::ref::conv2d_forward(x, k, b); }, 5);
        const double par = time_ms([&] { nn::conv2d_forward(x, k, b); }, 5);
        row("conv2d 16x16x8->8 fwd", ref, par);

        Tensor gy = random_tensor({batch, 16, 16, 8}, rng);
        Tensor gk, gb, gx;
        const double bwd = time_ms([&] { nn::conv2d_backward(x, k, gy, gk, gb, gx); }, 5);
        std::printf("%-28s %13s %10.3f ms\n", "conv2d backward", "-", bwd);
    }
    {
        Tensor x = random_tensor({batch, 16, 16, 8}, rng);
        const double ref = time_ms([&] { nn::ref::maxpool2x2_forward(x); }, 20);
        std::vector<std::int64_t> argmax;
        const double par = time_ms([&] { nn::maxpool2x2_forward(x, argmax); }, 20);
        row("maxpool2x2 16x16x8", ref, par);
    }
    {
        Tensor x = random_tensor({batch, 256}, rng);
        Tensor w = random_tensor({256, 256}, rng);
        Tensor b = random_tensor({256}, rng);
        const double ref = time_ms([&] { nn::ref::dense_forward(x, w, b); }, 10);
        const double par = time_ms([&] { nn::dense_forward(x, w, b); }, 10);
        row("dense 256->256 fwd", ref, par);

        Tensor gy = random_tensor({batch, 256}, rng);
        Tensor gw, gb, gx;
        const double bwd = time_ms([&] { nn::dense_backward(x, w, gy, gw, gb, gx); }, 10);
        std::printf("%-28s %13s %10.3f ms\n", "dense backward", "-", bwd);
    }
    {
        Tensor x = random_tensor({batch, 256}, rng);
        Tensor gamma = Tensor::full({256}, 1.0);
        Tensor beta({256});
        const double ref = time_ms([&] { nn::ref::batchnorm_forward(x, gamma, beta, 1e-5); }, 20);
        const double par = time_ms(
            [&] {
                Tensor mean, var;
                nn::feature_moments(x, mean, var);
            },
            20);
        row("batchnorm moments 256f", ref, par);
    }
    return 0;
}
