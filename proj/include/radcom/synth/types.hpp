#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace radcom::synth {

constexpr double kSampleRateHz = 10e6;  // 10 MS/s
constexpr int kFrameLen = 128;

enum class Modulation : int {
    PCW = 0,
    FMCW,
    BPSK,
    AM_DSB,
    AM_SSB,
    ASK,
    GFSK,
    DSSS_CCK,
    DSSS_OQPSK,
};
constexpr int kNumModulations = 9;

enum class SignalClass : int {
    AirborneDetection = 0,
    AirborneRange,
    AirGroundMTI,
    GroundMapping,
    RadarAltimeter,
    Satcom,
    AMRadio,
    ShortRange,
    Bluetooth,
    IEEE80211bg,
    IEEE802154,
};
constexpr int kNumSignalClasses = 11;

const char* to_string(Modulation m);
const char* to_string(SignalClass s);
Modulation modulation_from_string(const std::string& s);
SignalClass signal_from_string(const std::string& s);

bool is_valid_pair(Modulation m, SignalClass s);

// One of the 12 valid modulation/signal pairings; anything else is rejected
// at construction.
struct ModSigPair {
    Modulation modulation;
    SignalClass signal;

    ModSigPair(Modulation m, SignalClass s) : modulation(m), signal(s) {
        if (!is_valid_pair(m, s))
            throw std::invalid_argument(std::string("invalid modulation/signal pairing: ") + to_string(m) + "/" +
                                        to_string(s));
    }

    bool operator==(const ModSigPair&) const = default;
};

const std::vector<ModSigPair>& all_pairs();

// 128 complex baseband samples at 10 MS/s.
struct IQFrame {
    std::array<std::complex<double>, kFrameLen> samples{};

    double energy() const {
        double e = 0.0;
        for (const auto& s : samples) e += std::norm(s);
        return e;
    }

    bool all_finite() const {
        for (const auto& s : samples)
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) return false;
        return true;
    }
};

// Integer dB on the 20-level grid -20,-18,...,18.
struct SnrLevel {
    int db;

    explicit SnrLevel(int value) : db(value) {
        if (value < -20 || value > 18 || value % 2 != 0)
            throw std::invalid_argument("snr " + std::to_string(value) + " dB outside the -20..18 step-2 grid");
    }

    bool operator==(const SnrLevel&) const = default;
};

inline std::vector<SnrLevel> snr_grid(int lo = -20, int hi = 18) {
    std::vector<SnrLevel> g;
    for (int db = lo; db <= hi; db += 2) g.emplace_back(db);
    return g;
}

}  // namespace radcom::synth
