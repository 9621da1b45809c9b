#include <doctest.h>

#include "gradcheck.hpp"

using namespace radcom;

TEST_SUITE_BEGIN("gradients");

TEST_CASE("every layer kind passes finite-difference checks") {
    for (const auto kind : gradcheck::all_kinds()) {
        CAPTURE(nn::layer_kind_name(kind));
        for (std::uint64_t trial = 0; trial < 5; ++trial) {
            const auto r = gradcheck::check_kind(kind, mix_seed(77, trial));
            CAPTURE(trial);
            CAPTURE(r.failed);
            CAPTURE(r.worst_rel);
            CHECK(r.pass());
        }
    }
}

TEST_CASE("zero upstream gradient produces zero parameter gradients") {
    Rng rng(5);
    nn::Conv2d conv(2, 3, 3, rng);
    const Tensor x = gradcheck::random_tensor({2, 5, 5, 2}, rng);
    const Tensor y = conv.forward(x, nn::Mode::train);
    const Tensor gx = conv.backward(Tensor(y.shape));
    for (double v : conv.grad_kernels.data) CHECK(v == 0.0);
    for (double v : conv.grad_bias.data) CHECK(v == 0.0);
    for (double v : gx.data) CHECK(v == 0.0);
}

TEST_CASE("single dense layer reproduces dL/dW = x * delta") {
    Rng rng(6);
    nn::Dense dense(4, 3, rng);
    const Tensor x = gradcheck::random_tensor({1, 4}, rng);
    dense.forward(x, nn::Mode::train);
    Tensor delta({1, 3}, {0.5, -1.25, 2.0});
    dense.backward(delta);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(dense.grad_weights[i * 3 + j] == doctest::Approx(x[i] * delta[j]).epsilon(1e-12));
    for (int j = 0; j < 3; ++j) CHECK(dense.grad_bias[j] == doctest::Approx(delta[j]).epsilon(1e-12));
}

TEST_CASE("backward without a cached forward is rejected") {
    Rng rng(7);
    nn::Dense dense(4, 3, rng);
    CHECK_THROWS_AS(dense.backward(Tensor({1, 3})), std::logic_error);
    const Tensor x = gradcheck::random_tensor({1, 4}, rng);
    dense.forward(x, nn::Mode::train);
    dense.backward(Tensor({1, 3}));
    // cache consumed by the first backward
    CHECK_THROWS_AS(dense.backward(Tensor({1, 3})), std::logic_error);
}

TEST_SUITE_END();
