#include "radcom/data/vectorize.hpp"

#include <cmath>
#include <stdexcept>

namespace radcom::data {

VectorizedFrame normalize_vectorize(const synth::IQFrame& frame) {
    const double energy = frame.energy();
    if (energy <= 0.0) throw std::invalid_argument("normalize_vectorize: zero-energy frame rejected");
    const double scale = 1.0 / std::sqrt(energy);

    VectorizedFrame out;
    for (int i = 0; i < synth::kFrameLen; ++i) {
        out.values[static_cast<std::size_t>(i)] =
            static_cast<float>(frame.samples[static_cast<std::size_t>(i)].real() * scale);
        out.values[static_cast<std::size_t>(i + synth::kFrameLen)] =
            static_cast<float>(frame.samples[static_cast<std::size_t>(i)].imag() * scale);
    }
    return out;
}

}  // namespace radcom::data
