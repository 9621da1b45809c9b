#include <doctest.h>

#include <cmath>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "radcom/nn/ops.hpp"
#include "radcom/nn/ref_ops.hpp"
#include "radcom/rng.hpp"

using namespace radcom;

namespace {
Tensor random_tensor(std::vector<int> shape, Rng& rng, double lo = -1.0, double hi = 1.0) {
    Tensor t(std::move(shape));
    for (auto& v : t.data) v = rng.uniform(lo, hi);
    return t;
}
}  // namespace

TEST_SUITE_BEGIN("ops");

TEST_CASE("conv2d: zero input gives zero output for any kernels") {
    Rng rng(1);
    const Tensor x({5, 5, 1});
    const Tensor k = random_tensor({3, 3, 1, 4}, rng);
    const Tensor b({4});
    const Tensor y = nn::conv2d_forward(x, k, b);
    CHECK(y.shape == std::vector<int>{5, 5, 4});
    for (double v : y.data) CHECK(v == 0.0);
}

TEST_CASE("conv2d: centered delta kernel reproduces the input") {
    Rng rng(2);
    const Tensor x = random_tensor({3, 3, 1}, rng);
    Tensor k({3, 3, 1, 1});
    k[(1 * 3 + 1) * 1 * 1] = 1.0;  // center tap
    const Tensor y = nn::conv2d_forward(x, k, Tensor({1}));
    REQUIRE(y.shape == std::vector<int>{3, 3, 1});
    for (std::int64_t i = 0; i < x.size(); ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("conv2d matches the naive-loop reference") {
    Rng rng(3);
    const Tensor x = random_tensor({4, 4, 2}, rng);
    const Tensor k = random_tensor({3, 3, 2, 3}, rng);
    const Tensor b = random_tensor({3}, rng);
    const Tensor fast = nn::conv2d_forward(x, k, b);
    const Tensor ref = nn::ref::conv2d_forward(x, k, b);
    REQUIRE(fast.shape == ref.shape);
    for (std::int64_t i = 0; i < fast.size(); ++i) CHECK(std::abs(fast[i] - ref[i]) < 1e-6);
}

TEST_CASE("conv2d randomized against reference, batched shapes") {
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const int h = 3 + rng.uniform_int(8), w = 3 + rng.uniform_int(8);
        const int cin = 1 + rng.uniform_int(4), cout = 1 + rng.uniform_int(4);
        const int n = 1 + rng.uniform_int(3);
        const Tensor x = random_tensor({n, h, w, cin}, rng);
        const Tensor k = random_tensor({3, 3, cin, cout}, rng);
        const Tensor b = random_tensor({cout}, rng);
        const Tensor fast = nn::conv2d_forward(x, k, b);
        const Tensor ref = nn::ref::conv2d_forward(x, k, b);
        for (std::int64_t i = 0; i < fast.size(); ++i) REQUIRE(std::abs(fast[i] - ref[i]) < 1e-6);
    }
}

TEST_CASE("conv2d rejects channel mismatch with a shape diagnostic") {
    Rng rng(5);
    const Tensor x = random_tensor({4, 4, 2}, rng);
    const Tensor k = random_tensor({3, 3, 3, 2}, rng);
    CHECK_THROWS_WITH_AS(nn::conv2d_forward(x, k, Tensor({2})),
                         doctest::Contains("channels"), std::invalid_argument);
}

TEST_CASE("conv2d rejects inputs smaller than the kernel") {
    Rng rng(6);
    const Tensor x = random_tensor({2, 2, 1}, rng);
    const Tensor k = random_tensor({3, 3, 1, 1}, rng);
    CHECK_THROWS_AS(nn::conv2d_forward(x, k, Tensor({1})), std::invalid_argument);
}

TEST_CASE("maxpool: single window picks the max and its index") {
    Tensor x({2, 2, 1}, {1, 2, 3, 4});
    std::vector<std::int64_t> argmax;
    const Tensor y = nn::maxpool2x2_forward(x, argmax);
    CHECK(y.shape == std::vector<int>{1, 1, 1});
    CHECK(y[0] == 4.0);
    CHECK(argmax[0] == 3);  // flat index of (1,1)
}

TEST_CASE("maxpool: ties break toward the first row-major occurrence") {
    Tensor x = Tensor::full({4, 4, 1}, 2.5);
    std::vector<std::int64_t> argmax;
    const Tensor y = nn::maxpool2x2_forward(x, argmax);
    for (double v : y.data) CHECK(v == 2.5);
    CHECK(argmax[0] == 0);          // top-left of window (0,0)
    CHECK(argmax[1] == 2);          // top-left of window (0,1)
    CHECK(argmax[2] == 8);          // top-left of window (1,0)
}

TEST_CASE("maxpool equals the naive reference on random 16x16x8") {
    Rng rng(7);
    const Tensor x = random_tensor({16, 16, 8}, rng);
    std::vector<std::int64_t> argmax;
    const Tensor fast = nn::maxpool2x2_forward(x, argmax);
    const Tensor ref = nn::ref::maxpool2x2_forward(x);
    REQUIRE(fast.shape == ref.shape);
    for (std::int64_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == ref[i]);
}

TEST_CASE("maxpool floors odd extents and rejects tiny inputs") {
    Rng rng(8);
    const Tensor x = random_tensor({5, 7, 2}, rng);
    std::vector<std::int64_t> argmax;
    const Tensor y = nn::maxpool2x2_forward(x, argmax);
    CHECK(y.shape == std::vector<int>{2, 3, 2});
    CHECK_THROWS_AS(nn::maxpool2x2_forward(Tensor({1, 4, 1}), argmax), std::invalid_argument);
}

TEST_CASE("dense matches reference") {
    Rng rng(9);
    const Tensor x = random_tensor({5, 12}, rng);
    const Tensor w = random_tensor({12, 7}, rng);
    const Tensor b = random_tensor({7}, rng);
    const Tensor fast = nn::dense_forward(x, w, b);
    const Tensor ref = nn::ref::dense_forward(x, w, b);
    for (std::int64_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("softmax: symmetry, stability, normalization") {
    const Tensor u = nn::softmax_forward(Tensor({1, 3}));
    for (int j = 0; j < 3; ++j) CHECK(u[j] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const Tensor big = nn::softmax_forward(Tensor({1, 2}, {1000.0, 0.0}));
    CHECK(std::isfinite(big[0]));
    CHECK(big[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(big[1] == doctest::Approx(0.0).epsilon(1e-9));

    Rng rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const Tensor x = random_tensor({4, 9}, rng, -30.0, 30.0);
        const Tensor p = nn::softmax_forward(x);
        for (int r = 0; r < 4; ++r) {
            double sum = 0.0;
            for (int j = 0; j < 9; ++j) {
                REQUIRE(p[r * 9 + j] >= 0.0);
                sum += p[r * 9 + j];
            }
            REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-6));
        }
    }

    Tensor bad({1, 2});
    bad[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(nn::softmax_forward(bad), std::invalid_argument);
}

TEST_CASE("parallel kernels are bit-identical across thread counts") {
#ifdef _OPENMP
    Rng rng(11);
    const Tensor x = random_tensor({8, 16, 16, 3}, rng);
    const Tensor k = random_tensor({3, 3, 3, 8}, rng);
    const Tensor b = random_tensor({8}, rng);

    omp_set_num_threads(1);
    const Tensor y1 = nn::conv2d_forward(x, k, b);
    omp_set_num_threads(4);
    const Tensor y4 = nn::conv2d_forward(x, k, b);
    CHECK(y1.data == y4.data);
#endif
}

TEST_SUITE_END();
