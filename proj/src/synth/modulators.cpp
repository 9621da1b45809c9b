#include "radcom/synth/modulators.hpp"

#include <cmath>
#include <functional>

#include "radcom/rng.hpp"

namespace radcom::synth {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Seed stream tags. Tag 0 is reserved for data bits (see seeded_bits); the
// analog stream carries carrier phase, offsets, tone sets, and gating.
constexpr std::uint64_t kBitsTag = 0;
constexpr std::uint64_t kAnalogTag = 1;
constexpr std::uint64_t kHistoryTag = 2;

Rng analog_rng(std::uint64_t seed) { return Rng(mix_seed(seed, kAnalogTag)); }

// Bits for shaping history (symbol indices < 0), separate from the frame
// bit stream so frame bit k stays pinned to seeded_bits(seed)[k].
std::vector<int> history_bits(std::uint64_t seed, int count) {
    Rng rng(mix_seed(seed, kHistoryTag));
    std::vector<int> bits(count);
    for (auto& b : bits) b = rng.uniform_int(2);
    return bits;
}

// ISI-free raised-cosine pulse, unit at t=0, zeros at nonzero multiples of T.
double raised_cosine(double t_over_T, double rolloff) {
    const double x = t_over_T;
    const double sinc = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
    const double d = 1.0 - 4.0 * rolloff * rolloff * x * x;
    // cos(pi a x)/(1-4a^2x^2) -> pi/4 at x = 1/(2a)
    const double shape = std::abs(d) < 1e-9 ? kPi / 4.0 : std::cos(kPi * rolloff * x) / d;
    return sinc * shape;
}

double pulse_value(PulseShape shape, double t_over_T, double rolloff) {
    if (shape == PulseShape::rect) return (t_over_T >= -0.5 && t_over_T < 0.5) ? 1.0 : 0.0;
    return raised_cosine(t_over_T, rolloff);
}

// Span of the shaping pulse in symbols on each side of the center.
int pulse_span(PulseShape shape) { return shape == PulseShape::rect ? 1 : 6; }

// Symbol value at index k: frame bits for k >= 0, history bits behind it.
struct SymbolStream {
    std::vector<int> frame_bits;
    std::vector<int> past_bits;

    SymbolStream(std::uint64_t seed, int n_frame, int n_past)
        : frame_bits(seeded_bits(seed, n_frame)), past_bits(history_bits(seed, n_past)) {}

    int bit(int k) const {
        if (k >= 0) return frame_bits[static_cast<std::size_t>(k)];
        return past_bits[static_cast<std::size_t>(-k - 1)];
    }
};

std::complex<double> rotor(double phase) { return {std::cos(phase), std::sin(phase)}; }

// Linearly modulated stream: sum_k sym(k) * g(t - k T), mixed to a carrier.
std::vector<std::complex<double>> shaped_linear_mod(
    const SynthParams& p, std::uint64_t seed, int n,
    const std::function<std::complex<double>(const SymbolStream&, int)>& symbol_of) {
    const double fs = kSampleRateHz;
    const double T = 1.0 / p.symbol_rate_hz;
    const double spc = fs / p.symbol_rate_hz;  // samples per symbol, fractional
    const int span = pulse_span(p.shaping);
    const int n_syms = static_cast<int>(std::ceil(n / spc)) + span + 2;

    Rng arng = analog_rng(seed);
    const double phi0 = arng.uniform(0.0, kTwoPi);
    const double f_off = p.max_random_offset_hz > 0 ? arng.uniform(-p.max_random_offset_hz, p.max_random_offset_hz)
                                                    : 0.0;
    // Symbol encoders may draw several bits per symbol.
    SymbolStream bits(seed, 8 * n_syms, 8 * (span + 2));

    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = k / fs;
        const int center = static_cast<int>(std::floor(t / T + 0.5));
        std::complex<double> acc{0.0, 0.0};
        for (int m = center - span; m <= center + span; ++m) {
            const double g = pulse_value(p.shaping, t / T - m, p.rolloff);
            if (g != 0.0) acc += symbol_of(bits, m) * g;
        }
        out[static_cast<std::size_t>(k)] = acc * rotor(kTwoPi * f_off * t + phi0);
    }
    return out;
}

}  // namespace

std::vector<int> seeded_bits(std::uint64_t seed, int count) {
    Rng rng(mix_seed(seed, kBitsTag));
    std::vector<int> bits(static_cast<std::size_t>(count));
    for (auto& b : bits) b = rng.uniform_int(2);
    return bits;
}

std::vector<std::complex<double>> cck_codeword(const int bits[8]) {
    auto qpsk = [](int b0, int b1) { return kPi / 2.0 * (2 * b0 + b1); };
    const double p1 = qpsk(bits[0], bits[1]);
    const double p2 = qpsk(bits[2], bits[3]);
    const double p3 = qpsk(bits[4], bits[5]);
    const double p4 = qpsk(bits[6], bits[7]);
    return {rotor(p1 + p2 + p3 + p4), rotor(p1 + p3 + p4),        rotor(p1 + p2 + p4),
            -rotor(p1 + p4),          rotor(p1 + p2 + p3),        rotor(p1 + p3),
            -rotor(p1 + p2),          rotor(p1)};
}

namespace {

std::vector<std::complex<double>> gen_pcw_n(const SynthParams& p, std::uint64_t seed, int n) {
    const double fs = kSampleRateHz;
    Rng arng = analog_rng(seed);
    const double window_s = kFrameLen / fs;
    // Gated capture: the first pulse lands fully inside the 128-sample window.
    const double u = arng.uniform(0.0, std::max(window_s - p.pulse_width_s, 0.0));
    const double phi0 = arng.uniform(0.0, kTwoPi);

    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = k / fs;
        const double since = t - u;
        const double in_cycle = since - std::floor(since / p.pri_s) * p.pri_s;
        const bool on = since >= 0.0 && in_cycle < p.pulse_width_s;
        out[static_cast<std::size_t>(k)] =
            on ? rotor(kTwoPi * p.carrier_offset_hz * t + phi0) : std::complex<double>{0.0, 0.0};
    }
    return out;
}

std::vector<std::complex<double>> gen_fmcw_n(const SynthParams& p, std::uint64_t seed, int n) {
    const double fs = kSampleRateHz;
    Rng arng = analog_rng(seed);
    const double tau = arng.uniform(0.0, p.sweep_period_s);
    const double phi0 = arng.uniform(0.0, kTwoPi);
    const double slope = p.sweep_bandwidth_hz / p.sweep_period_s;

    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    double phase = phi0;
    for (int k = 0; k < n; ++k) {
        const double t = k / fs + tau;
        const double in_sweep = t - std::floor(t / p.sweep_period_s) * p.sweep_period_s;
        const double f = -p.sweep_bandwidth_hz / 2.0 + slope * in_sweep + p.carrier_offset_hz;
        out[static_cast<std::size_t>(k)] = rotor(phase);
        phase += kTwoPi * f / fs;
    }
    return out;
}

std::vector<std::complex<double>> gen_bpsk_n(const SynthParams& p, std::uint64_t seed, int n) {
    return shaped_linear_mod(p, seed, n, [](const SymbolStream& s, int m) {
        return std::complex<double>(s.bit(m) ? -1.0 : 1.0, 0.0);
    });
}

std::vector<std::complex<double>> gen_ask_n(const SynthParams& p, std::uint64_t seed, int n) {
    return shaped_linear_mod(p, seed, n, [](const SymbolStream& s, int m) {
        return std::complex<double>(s.bit(m) ? 1.0 : 0.0, 0.0);
    });
}

std::vector<std::complex<double>> gen_cck_n(const SynthParams& p, std::uint64_t seed, int n) {
    // 8-chip codewords; chip index m belongs to codeword m/8.
    return shaped_linear_mod(p, seed, n, [](const SymbolStream& s, int m) {
        const int word = m >= 0 ? m / 8 : -((-m + 7) / 8);
        const int chip = m - word * 8;
        int b[8];
        for (int i = 0; i < 8; ++i) b[i] = s.bit(word * 8 + i);
        return cck_codeword(b)[static_cast<std::size_t>(chip)];
    });
}

// Multitone message and its analytic (Hilbert) counterpart, closed form.
struct Message {
    double freq[3], phase[3], amp[3];

    Message(Rng& rng, const SynthParams& p) {
        double total = 0.0;
        for (int i = 0; i < 3; ++i) {
            freq[i] = rng.uniform(p.message_low_hz, p.message_high_hz);
            phase[i] = rng.uniform(0.0, kTwoPi);
            amp[i] = rng.uniform(0.5, 1.0);
            total += amp[i];
        }
        for (auto& a : amp) a /= total;  // |m(t)| <= 1, no overmodulation
    }

    double value(double t) const {
        double m = 0.0;
        for (int i = 0; i < 3; ++i) m += amp[i] * std::cos(kTwoPi * freq[i] * t + phase[i]);
        return m;
    }

    double hilbert(double t) const {
        double m = 0.0;
        for (int i = 0; i < 3; ++i) m += amp[i] * std::sin(kTwoPi * freq[i] * t + phase[i]);
        return m;
    }
};

std::vector<std::complex<double>> gen_am_n(const SynthParams& p, std::uint64_t seed, int n, bool ssb) {
    const double fs = kSampleRateHz;
    Rng arng = analog_rng(seed);
    const double phi0 = arng.uniform(0.0, kTwoPi);
    const double f_off = p.max_random_offset_hz > 0 ? arng.uniform(-p.max_random_offset_hz, p.max_random_offset_hz)
                                                    : 0.0;
    Message msg(arng, p);

    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = k / fs;
        std::complex<double> env;
        if (ssb)
            env = {1.0 + p.modulation_index * msg.value(t), p.modulation_index * msg.hilbert(t)};
        else
            env = {1.0 + p.modulation_index * msg.value(t), 0.0};
        out[static_cast<std::size_t>(k)] = env * rotor(kTwoPi * f_off * t + phi0);
    }
    return out;
}

std::vector<std::complex<double>> gen_gfsk_n(const SynthParams& p, std::uint64_t seed, int n) {
    const double fs = kSampleRateHz;
    const double T = 1.0 / p.symbol_rate_hz;
    const double bw = p.gaussian_bt * p.symbol_rate_hz;
    const double sigma_t = std::sqrt(std::log(2.0)) / (kTwoPi * bw);
    const int half = std::max(1, static_cast<int>(std::ceil(4.0 * sigma_t * fs)));

    // Unit-DC-gain Gaussian taps at the sample rate.
    std::vector<double> taps(static_cast<std::size_t>(2 * half + 1));
    double tap_sum = 0.0;
    for (int j = -half; j <= half; ++j) {
        const double t = j / fs;
        taps[static_cast<std::size_t>(j + half)] = std::exp(-t * t / (2.0 * sigma_t * sigma_t));
        tap_sum += taps[static_cast<std::size_t>(j + half)];
    }
    for (auto& v : taps) v /= tap_sum;

    const int n_syms = static_cast<int>(std::ceil((n + half) * 1.0 / (fs * T))) + 2;
    SymbolStream bits(seed, n_syms, 4 + static_cast<int>(half / (fs * T)) + 2);
    auto nrz = [&](int sample_idx) {
        const int sym = static_cast<int>(std::floor(sample_idx / (fs * T)));
        return bits.bit(sym) ? 1.0 : -1.0;
    };

    Rng arng = analog_rng(seed);
    const double phi0 = arng.uniform(0.0, kTwoPi);
    const double f_off = p.max_random_offset_hz > 0 ? arng.uniform(-p.max_random_offset_hz, p.max_random_offset_hz)
                                                    : 0.0;

    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    double phase = phi0;
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = -half; j <= half; ++j) s += taps[static_cast<std::size_t>(j + half)] * nrz(k - j);
        const double f = p.freq_deviation_hz * s + f_off;
        out[static_cast<std::size_t>(k)] = rotor(phase);
        phase += kTwoPi * f / fs;
    }
    return out;
}

std::vector<std::complex<double>> gen_oqpsk_n(const SynthParams& p, std::uint64_t seed, int n) {
    const double fs = kSampleRateHz;
    const double tc = 1.0 / p.symbol_rate_hz;  // chip period
    const int n_chips = static_cast<int>(std::ceil(n / (fs * tc))) + 6;

    // DSSS: data bits spread by a fixed 15-chip m-sequence (x^4 + x^3 + 1).
    static const int kPn15[15] = {1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 0};
    SymbolStream bits(seed, n_chips / 15 + 2, 4);
    auto chip = [&](int m) {
        if (m < 0) return (m % 2 == 0) ? 1.0 : -1.0;  // fixed warmup chips
        const int data = bits.bit(m / 15);
        return (data ^ kPn15[m % 15]) ? -1.0 : 1.0;
    };

    Rng arng = analog_rng(seed);
    const double phi0 = arng.uniform(0.0, kTwoPi);
    const double f_off = p.max_random_offset_hz > 0 ? arng.uniform(-p.max_random_offset_hz, p.max_random_offset_hz)
                                                    : 0.0;

    // Half-sine over two chip periods; even chips on I, odd chips on Q with
    // a half-chip-pair (one chip period) offset.
    auto half_sine = [&](double t) {
        if (t < 0.0 || t >= 2.0 * tc) return 0.0;
        return std::sin(kPi * t / (2.0 * tc));
    };

    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = k / fs;
        double i_arm = 0.0, q_arm = 0.0;
        const int mi = static_cast<int>(std::floor(t / (2.0 * tc)));
        for (int m = mi - 1; m <= mi + 1; ++m) {
            i_arm += chip(2 * m) * half_sine(t - 2.0 * m * tc);
            q_arm += chip(2 * m + 1) * half_sine(t - (2.0 * m + 1) * tc);
        }
        out[static_cast<std::size_t>(k)] =
            std::complex<double>(i_arm, q_arm) * rotor(kTwoPi * f_off * t + phi0);
    }
    return out;
}

IQFrame take_frame(const std::vector<std::complex<double>>& s) {
    IQFrame f;
    for (int i = 0; i < kFrameLen; ++i) f.samples[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)];
    return f;
}

}  // namespace

std::vector<std::complex<double>> gen_samples(Modulation mod, const SynthParams& p, std::uint64_t seed, int n) {
    validate_params(mod, p);
    switch (mod) {
        case Modulation::PCW: return gen_pcw_n(p, seed, n);
        case Modulation::FMCW: return gen_fmcw_n(p, seed, n);
        case Modulation::BPSK: return gen_bpsk_n(p, seed, n);
        case Modulation::AM_DSB: return gen_am_n(p, seed, n, false);
        case Modulation::AM_SSB: return gen_am_n(p, seed, n, true);
        case Modulation::ASK: return gen_ask_n(p, seed, n);
        case Modulation::GFSK: return gen_gfsk_n(p, seed, n);
        case Modulation::DSSS_CCK: return gen_cck_n(p, seed, n);
        case Modulation::DSSS_OQPSK: return gen_oqpsk_n(p, seed, n);
    }
    throw std::invalid_argument("gen_samples: unknown modulation");
}

IQFrame gen_pcw(const SynthParams& p, std::uint64_t seed) { return take_frame(gen_samples(Modulation::PCW, p, seed, kFrameLen)); }
IQFrame gen_fmcw(const SynthParams& p, std::uint64_t seed) { return take_frame(gen_samples(Modulation::FMCW, p, seed, kFrameLen)); }
IQFrame gen_bpsk(const SynthParams& p, std::uint64_t seed) { return take_frame(gen_samples(Modulation::BPSK, p, seed, kFrameLen)); }
IQFrame gen_am_dsb(const SynthParams& p, std::uint64_t seed) { return take_frame(gen_samples(Modulation::AM_DSB, p, seed, kFrameLen)); }
IQFrame gen_am_ssb(const SynthParams& p, std::uint64_t seed) { return take_frame(gen_samples(Modulation::AM_SSB, p, seed, kFrameLen)); }
IQFrame gen_ask(const SynthParams& p, std::uint64_t seed) { return take_frame(gen_samples(Modulation::ASK, p, seed, kFrameLen)); }
IQFrame gen_gfsk(const SynthParams& p, std::uint64_t seed) { return take_frame(gen_samples(Modulation::GFSK, p, seed, kFrameLen)); }
IQFrame gen_dsss_cck(const SynthParams& p, std::uint64_t seed) { return take_frame(gen_samples(Modulation::DSSS_CCK, p, seed, kFrameLen)); }
IQFrame gen_dsss_oqpsk(const SynthParams& p, std::uint64_t seed) { return take_frame(gen_samples(Modulation::DSSS_OQPSK, p, seed, kFrameLen)); }

IQFrame synth_frame(const ModSigPair& pair, const SynthParams& p, std::uint64_t seed) {
    IQFrame f = take_frame(gen_samples(pair.modulation, p, seed, kFrameLen));
    if (!f.all_finite()) throw std::runtime_error("synth_frame: non-finite samples for " + pair_key(pair));
    if (f.energy() <= 0.0) throw std::runtime_error("synth_frame: zero-energy frame for " + pair_key(pair));
    return f;
}

}  // namespace radcom::synth
