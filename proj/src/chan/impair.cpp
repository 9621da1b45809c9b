#include "radcom/chan/impair.hpp"

#include <cmath>
#include <complex>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "radcom/rng.hpp"

namespace radcom::chan {

using synth::IQFrame;
using synth::kFrameLen;
using synth::kSampleRateHz;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Seed stream tags per stage; a frame's stages stay independent.
constexpr std::uint64_t kAwgnTag = 10;
constexpr std::uint64_t kFadingTag = 11;
constexpr std::uint64_t kCfoTag = 12;
constexpr std::uint64_t kSroTag = 13;

// The random walks model a receiver that tuned in at an arbitrary point of a
// long drifting capture: the initial offset is a clamped Gaussian with the
// standard deviation the walk would accumulate over 1e6 samples. A zero step
// stddev therefore also zeroes the initial offset (identity diagnostics).
constexpr double kWalkWarmupSamples = 1e6;

double clamp(double v, double limit) { return v > limit ? limit : (v < -limit ? -limit : v); }

// Hann-windowed sinc, 8 samples wide, exact delta at integer arguments.
double wsinc(double x) {
    if (std::abs(x) >= 4.0) return 0.0;
    const double s = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
    const double w = 0.5 * (1.0 + std::cos(kPi * x / 4.0));
    return s * w;
}

std::complex<double> interp_wsinc(const std::complex<double>* x, int n, double t) {
    std::complex<double> acc{0.0, 0.0};
    const int lo = static_cast<int>(std::ceil(t - 4.0));
    const int hi = static_cast<int>(std::floor(t + 4.0));
    for (int i = lo; i <= hi; ++i) {
        if (i < 0 || i >= n) continue;  // zero outside the frame
        acc += x[i] * wsinc(t - static_cast<double>(i));
    }
    return acc;
}

}  // namespace

std::string dynamic_config_to_json(const DynamicConfig& cfg) {
    nlohmann::json j;
    j["cfo_stddev_per_sample_hz"] = cfg.cfo_stddev_per_sample_hz;
    j["cfo_max_hz"] = cfg.cfo_max_hz;
    j["sro_stddev_per_sample_hz"] = cfg.sro_stddev_per_sample_hz;
    j["sro_max_hz"] = cfg.sro_max_hz;
    j["n_fading_sinusoids"] = cfg.n_fading_sinusoids;
    j["max_doppler_hz"] = cfg.max_doppler_hz;
    j["rician_k"] = cfg.rician_k;
    j["pdp_delays"] = cfg.pdp_delays;
    j["pdp_magnitudes"] = cfg.pdp_magnitudes;
    j["n_taps"] = cfg.n_taps;
    return j.dump(2);
}

DynamicConfig dynamic_config_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    DynamicConfig d;
    DynamicConfig cfg;
    cfg.cfo_stddev_per_sample_hz = j.value("cfo_stddev_per_sample_hz", d.cfo_stddev_per_sample_hz);
    cfg.cfo_max_hz = j.value("cfo_max_hz", d.cfo_max_hz);
    cfg.sro_stddev_per_sample_hz = j.value("sro_stddev_per_sample_hz", d.sro_stddev_per_sample_hz);
    cfg.sro_max_hz = j.value("sro_max_hz", d.sro_max_hz);
    cfg.n_fading_sinusoids = j.value("n_fading_sinusoids", d.n_fading_sinusoids);
    cfg.max_doppler_hz = j.value("max_doppler_hz", d.max_doppler_hz);
    cfg.rician_k = j.value("rician_k", d.rician_k);
    cfg.pdp_delays = j.value("pdp_delays", d.pdp_delays);
    cfg.pdp_magnitudes = j.value("pdp_magnitudes", d.pdp_magnitudes);
    cfg.n_taps = j.value("n_taps", d.n_taps);
    return cfg;
}

IQFrame apply_awgn(const IQFrame& frame, double snr_db, std::uint64_t seed) {
    const double power = frame.energy() / kFrameLen;
    if (power <= 0.0) throw std::invalid_argument("apply_awgn: zero-power frame rejected");
    const double noise_var = power * std::pow(10.0, -snr_db / 10.0);
    const double sigma = std::sqrt(noise_var / 2.0);

    Rng rng(mix_seed(seed, kAwgnTag));
    IQFrame out = frame;
    for (auto& s : out.samples) {
        const double ni = sigma * rng.gaussian();
        const double nq = sigma * rng.gaussian();
        s += std::complex<double>(ni, nq);
    }
    return out;
}

std::vector<double> multipath_fir(const DynamicConfig& cfg) {
    if (cfg.pdp_delays.size() != cfg.pdp_magnitudes.size())
        throw std::invalid_argument("apply_dynamic: PDP delays (" + std::to_string(cfg.pdp_delays.size()) +
                                    ") and magnitudes (" + std::to_string(cfg.pdp_magnitudes.size()) +
                                    ") differ in length");
    if (cfg.n_taps < 1) throw std::invalid_argument("apply_dynamic: n_taps must be positive");
    for (double m : cfg.pdp_magnitudes)
        if (m < 0.0) throw std::invalid_argument("apply_dynamic: PDP magnitudes must be non-negative");

    std::vector<double> h(static_cast<std::size_t>(cfg.n_taps), 0.0);
    for (std::size_t k = 0; k < cfg.pdp_delays.size(); ++k)
        for (int i = 0; i < cfg.n_taps; ++i)
            h[static_cast<std::size_t>(i)] += cfg.pdp_magnitudes[k] * wsinc(i - cfg.pdp_delays[k]);
    return h;
}

IQFrame apply_dynamic(const IQFrame& frame, const DynamicConfig& cfg, std::uint64_t seed,
                      DynamicTrace* trace) {
    const int n = kFrameLen;
    if (trace) {
        trace->cfo_hz.assign(n, 0.0);
        trace->sro_hz.assign(n, 0.0);
        trace->fading.assign(n, {0.0, 0.0});
    }

    // 1. fractional-delay multipath FIR
    const std::vector<double> h = multipath_fir(cfg);
    IQFrame stage;
    for (int t = 0; t < n; ++t) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < h.size(); ++i) {
            const int src = t - static_cast<int>(i);
            if (src >= 0) acc += h[i] * frame.samples[static_cast<std::size_t>(src)];
        }
        stage.samples[static_cast<std::size_t>(t)] = acc;
    }

    // 2. Rician fading: deterministic LOS ray plus a sum-of-sinusoids
    // diffuse field, unit mean power overall.
    {
        Rng rng(mix_seed(seed, kFadingTag));
        const double k_lin = cfg.rician_k;
        const double los_amp = std::sqrt(k_lin / (k_lin + 1.0));
        const double diff_amp = std::sqrt(1.0 / ((k_lin + 1.0) * cfg.n_fading_sinusoids));
        const double f_los = cfg.max_doppler_hz * std::cos(rng.uniform(0.0, kTwoPi));
        std::vector<double> f_m(static_cast<std::size_t>(cfg.n_fading_sinusoids));
        std::vector<double> psi_m(static_cast<std::size_t>(cfg.n_fading_sinusoids));
        for (int m = 0; m < cfg.n_fading_sinusoids; ++m) {
            f_m[static_cast<std::size_t>(m)] = cfg.max_doppler_hz * std::cos(rng.uniform(0.0, kTwoPi));
            psi_m[static_cast<std::size_t>(m)] = rng.uniform(0.0, kTwoPi);
        }
        for (int t = 0; t < n; ++t) {
            const double ts = t / kSampleRateHz;
            std::complex<double> g{los_amp * std::cos(kTwoPi * f_los * ts),
                                   los_amp * std::sin(kTwoPi * f_los * ts)};
            for (int m = 0; m < cfg.n_fading_sinusoids; ++m) {
                const double ph = kTwoPi * f_m[static_cast<std::size_t>(m)] * ts + psi_m[static_cast<std::size_t>(m)];
                g += std::complex<double>(diff_amp * std::cos(ph), diff_amp * std::sin(ph));
            }
            if (trace) trace->fading[static_cast<std::size_t>(t)] = g;
            stage.samples[static_cast<std::size_t>(t)] *= g;
        }
    }

    // 3. CFO: clamped Gaussian random walk rotating phase
    {
        Rng rng(mix_seed(seed, kCfoTag));
        const double step = cfg.cfo_stddev_per_sample_hz;
        double f = clamp(step * std::sqrt(kWalkWarmupSamples) * rng.gaussian(), cfg.cfo_max_hz);
        double phase = 0.0;
        for (int t = 0; t < n; ++t) {
            f = clamp(f + step * rng.gaussian(), cfg.cfo_max_hz);
            if (trace) trace->cfo_hz[static_cast<std::size_t>(t)] = f;
            phase += kTwoPi * f / kSampleRateHz;
            stage.samples[static_cast<std::size_t>(t)] *= std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }

    // 4. SRO: clamped random-walk resampling offset
    {
        Rng rng(mix_seed(seed, kSroTag));
        const double step = cfg.sro_stddev_per_sample_hz;
        double r = clamp(step * std::sqrt(kWalkWarmupSamples) * rng.gaussian(), cfg.sro_max_hz);
        IQFrame resampled;
        double pos = 0.0;
        for (int t = 0; t < n; ++t) {
            r = clamp(r + step * rng.gaussian(), cfg.sro_max_hz);
            if (trace) trace->sro_hz[static_cast<std::size_t>(t)] = r;
            resampled.samples[static_cast<std::size_t>(t)] = interp_wsinc(stage.samples.data(), n, pos);
            pos += 1.0 + r / kSampleRateHz;
        }
        stage = resampled;
    }

    return stage;
}

}  // namespace radcom::chan
