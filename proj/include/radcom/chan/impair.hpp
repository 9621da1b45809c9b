#pragma once

#include <cstdint>
#include <vector>

#include "radcom/synth/types.hpp"

namespace radcom::chan {

// RadComDynamic channel settings; defaults are the published table values.
struct DynamicConfig {
    double cfo_stddev_per_sample_hz = 0.05;
    double cfo_max_hz = 250.0;
    double sro_stddev_per_sample_hz = 0.05;
    double sro_max_hz = 60.0;
    int n_fading_sinusoids = 5;
    double max_doppler_hz = 2.0;
    double rician_k = 3.0;
    std::vector<double> pdp_delays = {0.2, 0.3, 0.1};  // fractional samples
    std::vector<double> pdp_magnitudes = {1.0, 0.5, 0.5};
    int n_taps = 5;

    bool operator==(const DynamicConfig&) const = default;
};

std::string dynamic_config_to_json(const DynamicConfig& cfg);
DynamicConfig dynamic_config_from_json(const std::string& json_text);

// Adds circularly symmetric complex Gaussian noise at the requested SNR
// relative to the frame's measured power. snr_db may sit outside the dataset
// grid (diagnostics); rejects zero-power frames.
synth::IQFrame apply_awgn(const synth::IQFrame& frame, double snr_db, std::uint64_t seed);

inline synth::IQFrame apply_awgn(const synth::IQFrame& frame, synth::SnrLevel snr, std::uint64_t seed) {
    return apply_awgn(frame, static_cast<double>(snr.db), seed);
}

// Per-sample values the channel actually applied; lets tests assert the
// clamp and K-factor invariants on real trajectories.
struct DynamicTrace {
    std::vector<double> cfo_hz;
    std::vector<double> sro_hz;
    std::vector<std::complex<double>> fading;
};

// Propagation/hardware impairments in a fixed order: fractional-delay
// multipath FIR, Rician sum-of-sinusoids fading, clamped random-walk CFO,
// clamped random-walk SRO resampling. Deterministic per (frame, cfg, seed).
synth::IQFrame apply_dynamic(const synth::IQFrame& frame, const DynamicConfig& cfg, std::uint64_t seed,
                             DynamicTrace* trace = nullptr);

// Multipath FIR taps implied by cfg (n_taps coefficients): each PDP entry
// contributes a Hann-windowed sinc (8-wide) centered on its fractional
// delay; integer delays collapse to exact taps.
std::vector<double> multipath_fir(const DynamicConfig& cfg);

}  // namespace radcom::chan
