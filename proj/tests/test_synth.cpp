#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "radcom/chan/impair.hpp"
#include "radcom/synth/modulators.hpp"
#include "testfft.hpp"

using namespace radcom;
using namespace radcom::synth;

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_phase(double p) {
    while (p > kPi) p -= 2 * kPi;
    while (p < -kPi) p += 2 * kPi;
    return p;
}

// Phase of x resolved to the nearest multiple of pi/base relative to ref.
int nearest_sector(std::complex<double> x, double ref_phase, int sectors) {
    const double p = wrap_phase(std::arg(x) - ref_phase);
    int s = static_cast<int>(std::lround(p / (2 * kPi / sectors)));
    return ((s % sectors) + sectors) % sectors;
}

}  // namespace

TEST_SUITE_BEGIN("synth");

TEST_CASE("pairings: exactly 12 valid, any other rejected") {
    CHECK(all_pairs().size() == 12);
    CHECK_NOTHROW(ModSigPair(Modulation::PCW, SignalClass::GroundMapping));
    CHECK_THROWS_AS(ModSigPair(Modulation::BPSK, SignalClass::Bluetooth), std::invalid_argument);
    CHECK_THROWS_AS(ModSigPair(Modulation::PCW, SignalClass::Satcom), std::invalid_argument);
    int count = 0;
    for (int m = 0; m < kNumModulations; ++m)
        for (int s = 0; s < kNumSignalClasses; ++s)
            count += is_valid_pair(static_cast<Modulation>(m), static_cast<SignalClass>(s)) ? 1 : 0;
    CHECK(count == 12);
}

TEST_CASE("snr grid: 20 levels, off-grid values rejected") {
    CHECK(snr_grid().size() == 20);
    CHECK_THROWS_AS(SnrLevel(-22), std::invalid_argument);
    CHECK_THROWS_AS(SnrLevel(3), std::invalid_argument);
    CHECK_NOTHROW(SnrLevel(-20));
    CHECK_NOTHROW(SnrLevel(18));
}

TEST_CASE("class table round-trips through JSON") {
    const ClassTable table = default_class_table();
    CHECK(table.size() == 12);
    const ClassTable back = class_table_from_json(class_table_to_json(table));
    CHECK(back == table);
}

TEST_CASE("shipped config file matches the built-in class table and channel defaults") {
    std::ifstream is(std::string(RADCOM_CONFIG_DIR) + "/default.json");
    REQUIRE(is);
    const std::string text{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
    const auto j = nlohmann::json::parse(text);
    const ClassTable shipped = class_table_from_json(j.at("classes").dump());
    const ClassTable builtin = default_class_table();
    REQUIRE(shipped.size() == builtin.size());
    for (const auto& [key, params] : builtin) {
        CAPTURE(key);
        REQUIRE(shipped.count(key) == 1);
        CHECK(shipped.at(key) == params);
    }
    CHECK(radcom::chan::dynamic_config_from_json(j.at("dynamic").dump()) == radcom::chan::DynamicConfig{});
}

TEST_CASE("params exceeding Nyquist are rejected") {
    SynthParams p = default_params({Modulation::BPSK, SignalClass::Satcom});
    p.symbol_rate_hz = 12e6;
    CHECK_THROWS_AS(validate_params(Modulation::BPSK, p), std::invalid_argument);
    SynthParams cck = default_params({Modulation::DSSS_CCK, SignalClass::IEEE80211bg});
    cck.symbol_rate_hz = 11e6;  // the full-rate value that motivated half-rate
    CHECK_THROWS_AS(validate_params(Modulation::DSSS_CCK, cck), std::invalid_argument);
}

TEST_CASE("determinism: identical (pair, params, seed) gives bit-identical frames") {
    for (const auto& pair : all_pairs()) {
        const SynthParams p = default_params(pair);
        const IQFrame a = synth_frame(pair, p, 42);
        const IQFrame b = synth_frame(pair, p, 42);
        const IQFrame c = synth_frame(pair, p, 43);
        CHECK(a.samples == b.samples);
        bool differs = false;
        for (int i = 0; i < kFrameLen; ++i) differs = differs || a.samples[i] != c.samples[i];
        CHECK(differs);
    }
}

TEST_CASE("every pair yields finite nonzero-energy frames") {
    for (const auto& pair : all_pairs()) {
        const SynthParams p = default_params(pair);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const IQFrame f = synth_frame(pair, p, seed);
            REQUIRE(f.all_finite());
            REQUIRE(f.energy() > 0.0);
        }
    }
}

TEST_CASE("PCW: zero outside the pulse, constant magnitude inside") {
    const SynthParams p = default_params({Modulation::PCW, SignalClass::AirborneDetection});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const IQFrame f = gen_pcw(p, seed);
        int on = 0, off = 0;
        for (const auto& s : f.samples) {
            const double mag = std::abs(s);
            if (mag > 1e-12) {
                REQUIRE(mag == doctest::Approx(1.0).epsilon(1e-9));
                ++on;
            } else {
                ++off;
            }
        }
        // 1 us pulse at 10 MS/s: 10 on-samples, gated fully inside the window
        CHECK(on == 10);
        CHECK(off == kFrameLen - 10);
    }
}

TEST_CASE("FMCW: instantaneous frequency slope matches bandwidth/period within 5%") {
    const SynthParams p = default_params({Modulation::FMCW, SignalClass::RadarAltimeter});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IQFrame f = gen_fmcw(p, seed);
        // freq between consecutive samples, then median slope (robust to the
        // sawtooth reset)
        std::vector<double> freq;
        for (int i = 0; i + 1 < kFrameLen; ++i)
            freq.push_back(std::arg(f.samples[i + 1] * std::conj(f.samples[i])) * kSampleRateHz / (2 * kPi));
        std::vector<double> dif;
        for (std::size_t i = 0; i + 1 < freq.size(); ++i) dif.push_back(freq[i + 1] - freq[i]);
        std::nth_element(dif.begin(), dif.begin() + dif.size() / 2, dif.end());
        const double slope = dif[dif.size() / 2] * kSampleRateHz;  // Hz per second
        const double expected = p.sweep_bandwidth_hz / p.sweep_period_s;
        CHECK(slope == doctest::Approx(expected).epsilon(0.05));
    }
}

TEST_CASE("BPSK demod oracle: rectangular shaping, phases in {0, pi}, bits recovered") {
    SynthParams p = default_params({Modulation::BPSK, SignalClass::Satcom});
    p.shaping = PulseShape::rect;
    p.max_random_offset_hz = 0.0;
    const int spc = 10;  // 10 MS/s over 1 MSym/s
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IQFrame f = gen_bpsk(p, seed);
        // carrier phase from squared symbols (pi-ambiguous)
        std::complex<double> sq{0.0, 0.0};
        for (int m = 0; m * spc < kFrameLen; ++m) sq += f.samples[m * spc] * f.samples[m * spc];
        const double phi = std::arg(sq) / 2.0;
        const auto bits = seeded_bits(seed, kFrameLen / spc + 1);
        // resolve the pi ambiguity with symbol 0 as pilot
        const int s0 = nearest_sector(f.samples[0], phi, 2);
        const int flip = s0 == bits[0] ? 0 : 1;
        for (int m = 0; m * spc < kFrameLen; ++m) {
            const double resid = wrap_phase(std::arg(f.samples[m * spc]) - phi);
            const double dist_to_grid = std::min(std::abs(resid), kPi - std::abs(resid));
            REQUIRE(dist_to_grid < 1e-6);  // phases on the {0, pi} grid
            const int sector = nearest_sector(f.samples[m * spc], phi, 2);
            REQUIRE((sector ^ flip) == bits[static_cast<std::size_t>(m)]);
        }
    }
}

TEST_CASE("ASK demod oracle: on-off envelope at symbol centers recovers bits") {
    SynthParams p = default_params({Modulation::ASK, SignalClass::ShortRange});
    p.max_random_offset_hz = 0.0;
    const int spc = 20;  // 500 kSym/s
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IQFrame f = gen_ask(p, seed);
        const auto bits = seeded_bits(seed, kFrameLen / spc + 1);
        for (int m = 0; m * spc < kFrameLen; ++m) {
            const double mag = std::abs(f.samples[m * spc]);
            const int bit = mag > 0.5 ? 1 : 0;
            REQUIRE(bit == bits[static_cast<std::size_t>(m)]);
            REQUIRE(std::min(mag, std::abs(mag - 1.0)) < 1e-6);  // RC is ISI-free at centers
        }
    }
}

TEST_CASE("AM-DSB with index 0 is a pure carrier") {
    SynthParams p = default_params({Modulation::AM_DSB, SignalClass::AMRadio});
    p.modulation_index = 0.0;
    const IQFrame f = gen_am_dsb(p, 5);
    for (const auto& s : f.samples) CHECK(std::abs(s) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("AM spectra: SSB one-sided, DSB symmetric") {
    SynthParams p = default_params({Modulation::AM_SSB, SignalClass::AMRadio});
    p.message_low_hz = 1000.0;  // keep tones clear of the carrier-bin exclusion
    const int n = 65536;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        for (const bool ssb : {true, false}) {
            const auto x = gen_samples(ssb ? Modulation::AM_SSB : Modulation::AM_DSB, p, seed, n);
            std::vector<double> freq;
            const auto power = testfft::psd(x, kSampleRateHz, freq);
            const std::size_t carrier = static_cast<std::size_t>(
                std::max_element(power.begin(), power.end()) - power.begin());
            double upper = 0.0, lower = 0.0;
            for (std::size_t i = 0; i < power.size(); ++i) {
                if (i + 4 >= carrier && i <= carrier + 4) continue;  // exclude the carrier line
                if (i > carrier)
                    upper += power[i];
                else
                    lower += power[i];
            }
            if (ssb) {
                CHECK(upper / (upper + lower) >= 0.95);
            } else {
                CHECK(std::abs(upper - lower) <= 0.1 * (upper + lower));
            }
        }
    }
}

TEST_CASE("GFSK: bounded instantaneous frequency, signs at centers match bits") {
    SynthParams p = default_params({Modulation::GFSK, SignalClass::Bluetooth});
    p.max_random_offset_hz = 0.0;
    const int spc = 10;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IQFrame f = gen_gfsk(p, seed);
        const auto bits = seeded_bits(seed, kFrameLen / spc + 1);
        for (int i = 0; i + 1 < kFrameLen; ++i) {
            const double freq =
                std::arg(f.samples[i + 1] * std::conj(f.samples[i])) * kSampleRateHz / (2 * kPi);
            REQUIRE(std::abs(freq) <= p.freq_deviation_hz * (1.0 + 1e-9));  // Gaussian filter cannot overshoot
        }
        for (int m = 0; (m * spc + spc / 2 + 1) < kFrameLen; ++m) {
            const int k = m * spc + spc / 2;
            const double freq =
                std::arg(f.samples[k + 1] * std::conj(f.samples[k])) * kSampleRateHz / (2 * kPi);
            REQUIRE((freq > 0 ? 1 : 0) == bits[static_cast<std::size_t>(m)]);
        }
    }
}

TEST_CASE("DSSS-OQPSK: constant envelope and exact chip recovery") {
    SynthParams p = default_params({Modulation::DSSS_OQPSK, SignalClass::IEEE802154});
    p.max_random_offset_hz = 0.0;
    static const int pn15[15] = {1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 0};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IQFrame f = gen_dsss_oqpsk(p, seed);
        for (const auto& s : f.samples) REQUIRE(std::abs(s) == doctest::Approx(1.0).epsilon(0.01));

        // chip c peaks at sample 5*(c+1); even chips ride I, odd chips Q
        std::complex<double> sq{0.0, 0.0};
        for (int c = 0; 5 * (c + 1) < kFrameLen; c += 2) {
            const auto v = f.samples[5 * (c + 1)];
            sq += v * v;
        }
        const double phi = std::arg(sq) / 2.0;
        const auto bits = seeded_bits(seed, kFrameLen / (5 * 15) + 2);
        auto expected_chip = [&](int c) { return (bits[static_cast<std::size_t>(c / 15)] ^ pn15[c % 15]) ? -1 : 1; };
        const auto rot = std::complex<double>(std::cos(-phi), std::sin(-phi));
        const double pilot = (f.samples[5] * rot).real();
        const double flip = (pilot > 0 ? 1 : -1) == expected_chip(0) ? 1.0 : -1.0;
        for (int c = 0; 5 * (c + 1) < kFrameLen; ++c) {
            const auto v = f.samples[5 * (c + 1)] * rot;
            const double arm = (c % 2 == 0 ? v.real() : v.imag()) * flip;
            REQUIRE((arm > 0 ? 1 : -1) == expected_chip(c));
            REQUIRE(std::abs(std::abs(arm) - 1.0) < 1e-6);  // peak of the half-sine
        }
    }
}

TEST_CASE("DSSS-CCK demod oracle: codeword inversion recovers the bit stream") {
    SynthParams p = default_params({Modulation::DSSS_CCK, SignalClass::IEEE80211bg});
    p.max_random_offset_hz = 0.0;
    const double spc = kSampleRateHz / p.symbol_rate_hz;  // 1.818... samples/chip
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto x = gen_samples(Modulation::DSSS_CCK, p, seed, 512);
        auto chip_at = [&](int c) { return testfft::interp(x, spc * c); };

        // 4th power collapses QPSK structure; phi0 recovered mod pi/2
        std::complex<double> p4{0.0, 0.0};
        for (int c = 8; c < 200; ++c) {
            const auto v = chip_at(c);
            p4 += v * v * v * v;
        }
        double phi = std::arg(p4) / 4.0;

        const auto bits = seeded_bits(seed, 8 * 30);
        auto word_phases = [&](int w) {
            int b[8];
            for (int i = 0; i < 8; ++i) b[i] = bits[static_cast<std::size_t>(8 * w + i)];
            const auto cw = cck_codeword(b);
            return cw;
        };
        // resolve the pi/2 ambiguity against word 1 chip 7 (= e^{j phi1})
        {
            const auto expected = word_phases(1)[7];
            const auto seen = chip_at(8 * 1 + 7);
            const double resid = wrap_phase(std::arg(seen) - phi - std::arg(expected));
            phi += (kPi / 2.0) * std::lround(resid / (kPi / 2.0));
        }
        const auto rot = std::complex<double>(std::cos(-phi), std::sin(-phi));
        for (int w = 1; w <= 8; ++w) {
            const auto expected = word_phases(w);
            for (int c = 0; c < 8; ++c) {
                const auto seen = chip_at(8 * w + c) * rot;
                const double err = std::abs(wrap_phase(std::arg(seen) - std::arg(expected[c])));
                REQUIRE(err < 0.2);  // well inside the pi/4 QPSK decision margin
            }
        }
    }
}

TEST_CASE("occupied bandwidth matches each class's rated value within 25%") {
    const int n = 65536;
    for (const auto& pair : all_pairs()) {
        const SynthParams p = default_params(pair);
        // AM tone placement is seeded; average the measurement
        double obw = 0.0;
        for (std::uint64_t seed = 100; seed < 108; ++seed)
            obw += testfft::occupied_bw_99(gen_samples(pair.modulation, p, seed, n), kSampleRateHz);
        obw /= 8.0;
        CAPTURE(pair_key(pair));
        CAPTURE(obw);
        CHECK(obw == doctest::Approx(p.nominal_obw_hz).epsilon(0.25));
    }
}

TEST_SUITE_END();
