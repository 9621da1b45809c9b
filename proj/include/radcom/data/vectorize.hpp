#pragma once

#include <array>

#include "radcom/synth/types.hpp"

namespace radcom::data {

// 256 real values: the unit-energy frame's 128 I samples followed by its
// 128 Q samples. The model reads it as a row-major 16x16 grid.
struct VectorizedFrame {
    std::array<float, 256> values{};

    bool operator==(const VectorizedFrame&) const = default;

    double energy() const {
        double e = 0.0;
        for (float v : values) e += static_cast<double>(v) * v;
        return e;
    }
};

// Energy-normalizes, then stacks [I; Q]. Rejects zero-energy frames.
VectorizedFrame normalize_vectorize(const synth::IQFrame& frame);

}  // namespace radcom::data
