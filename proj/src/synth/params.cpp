#include "radcom/synth/params.hpp"

#include <nlohmann/json.hpp>

namespace radcom::synth {

using nlohmann::json;

const char* to_string(Modulation m) {
    switch (m) {
        case Modulation::PCW: return "PCW";
        case Modulation::FMCW: return "FMCW";
        case Modulation::BPSK: return "BPSK";
        case Modulation::AM_DSB: return "AM-DSB";
        case Modulation::AM_SSB: return "AM-SSB";
        case Modulation::ASK: return "ASK";
        case Modulation::GFSK: return "GFSK";
        case Modulation::DSSS_CCK: return "DSSS-CCK";
        case Modulation::DSSS_OQPSK: return "DSSS-OQPSK";
    }
    return "?";
}

const char* to_string(SignalClass s) {
    switch (s) {
        case SignalClass::AirborneDetection: return "Airborne-detection";
        case SignalClass::AirborneRange: return "Airborne-range";
        case SignalClass::AirGroundMTI: return "Air-Ground-MTI";
        case SignalClass::GroundMapping: return "Ground-mapping";
        case SignalClass::RadarAltimeter: return "Radar-Altimeter";
        case SignalClass::Satcom: return "Satcom";
        case SignalClass::AMRadio: return "AM-Radio";
        case SignalClass::ShortRange: return "Short-Range";
        case SignalClass::Bluetooth: return "Bluetooth";
        case SignalClass::IEEE80211bg: return "IEEE802.11bg";
        case SignalClass::IEEE802154: return "IEEE802.15.4";
    }
    return "?";
}

Modulation modulation_from_string(const std::string& s) {
    for (int i = 0; i < kNumModulations; ++i)
        if (s == to_string(static_cast<Modulation>(i))) return static_cast<Modulation>(i);
    throw std::invalid_argument("unknown modulation class: " + s);
}

SignalClass signal_from_string(const std::string& s) {
    for (int i = 0; i < kNumSignalClasses; ++i)
        if (s == to_string(static_cast<SignalClass>(i))) return static_cast<SignalClass>(i);
    throw std::invalid_argument("unknown signal class: " + s);
}

bool is_valid_pair(Modulation m, SignalClass s) {
    switch (m) {
        case Modulation::PCW:
            return s == SignalClass::AirborneDetection || s == SignalClass::AirborneRange ||
                   s == SignalClass::AirGroundMTI || s == SignalClass::GroundMapping;
        case Modulation::FMCW: return s == SignalClass::RadarAltimeter;
        case Modulation::BPSK: return s == SignalClass::Satcom;
        case Modulation::AM_DSB:
        case Modulation::AM_SSB: return s == SignalClass::AMRadio;
        case Modulation::ASK: return s == SignalClass::ShortRange;
        case Modulation::GFSK: return s == SignalClass::Bluetooth;
        case Modulation::DSSS_CCK: return s == SignalClass::IEEE80211bg;
        case Modulation::DSSS_OQPSK: return s == SignalClass::IEEE802154;
    }
    return false;
}

const std::vector<ModSigPair>& all_pairs() {
    static const std::vector<ModSigPair> pairs = [] {
        std::vector<ModSigPair> v;
        for (int m = 0; m < kNumModulations; ++m)
            for (int s = 0; s < kNumSignalClasses; ++s)
                if (is_valid_pair(static_cast<Modulation>(m), static_cast<SignalClass>(s)))
                    v.emplace_back(static_cast<Modulation>(m), static_cast<SignalClass>(s));
        return v;
    }();
    return pairs;
}

std::string pair_key(const ModSigPair& pair) {
    return std::string(to_string(pair.modulation)) + "/" + to_string(pair.signal);
}

ModSigPair pair_from_key(const std::string& key) {
    const auto slash = key.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("class key must be MOD/SIGNAL, got: " + key);
    return {modulation_from_string(key.substr(0, slash)), signal_from_string(key.substr(slash + 1))};
}

SynthParams default_params(const ModSigPair& pair) {
    SynthParams p;
    switch (pair.modulation) {
        case Modulation::PCW:
            switch (pair.signal) {
                case SignalClass::AirborneDetection:
                    p.pulse_width_s = 1.0e-6;
                    p.pri_s = 20e-6;
                    p.carrier_offset_hz = 200e3;
                    break;
                case SignalClass::AirborneRange:
                    p.pulse_width_s = 2.0e-6;
                    p.pri_s = 40e-6;
                    p.carrier_offset_hz = 400e3;
                    break;
                case SignalClass::AirGroundMTI:
                    p.pulse_width_s = 3.0e-6;
                    p.pri_s = 60e-6;
                    p.carrier_offset_hz = 600e3;
                    break;
                default:  // Ground-mapping
                    p.pulse_width_s = 5.0e-6;
                    p.pri_s = 100e-6;
                    p.carrier_offset_hz = 800e3;
                    break;
            }
            p.nominal_obw_hz = 0.0;  // filled below per pulse width
            break;
        case Modulation::FMCW:
            p.sweep_bandwidth_hz = 1.0e6;
            p.sweep_period_s = 10e-6;
            p.nominal_obw_hz = 1.4e6;
            break;
        case Modulation::BPSK:
            p.symbol_rate_hz = 1.0e6;
            p.shaping = PulseShape::raised_cosine;
            p.rolloff = 0.35;
            p.nominal_obw_hz = 1.05e6;
            break;
        case Modulation::AM_DSB:
            p.max_random_offset_hz = 100e3;
            p.nominal_obw_hz = 6.1e3;
            break;
        case Modulation::AM_SSB:
            p.max_random_offset_hz = 100e3;
            p.nominal_obw_hz = 3.6e3;
            break;
        case Modulation::ASK:
            p.symbol_rate_hz = 500e3;
            p.shaping = PulseShape::raised_cosine;
            p.rolloff = 0.35;
            p.nominal_obw_hz = 500e3;
            break;
        case Modulation::GFSK:
            p.symbol_rate_hz = 1.0e6;
            p.freq_deviation_hz = 250e3;
            p.gaussian_bt = 0.5;
            p.nominal_obw_hz = 1.03e6;
            break;
        case Modulation::DSSS_CCK:
            // 11 Mchip/s exceeds single-sided Nyquist at 10 MS/s; half-rate.
            p.symbol_rate_hz = 5.5e6;
            p.shaping = PulseShape::raised_cosine;
            p.rolloff = 0.3;
            p.nominal_obw_hz = 5.7e6;
            break;
        case Modulation::DSSS_OQPSK:
            p.symbol_rate_hz = 2.0e6;
            p.nominal_obw_hz = 2.5e6;
            break;
    }
    if (pair.modulation == Modulation::PCW) {
        // Rect pulse edges put much of the 99% energy in the sinc tails;
        // values measured with the OBW oracle at the table settings.
        switch (pair.signal) {
            case SignalClass::AirborneDetection: p.nominal_obw_hz = 8.1e6; break;
            case SignalClass::AirborneRange: p.nominal_obw_hz = 6.5e6; break;
            case SignalClass::AirGroundMTI: p.nominal_obw_hz = 5.2e6; break;
            default: p.nominal_obw_hz = 3.65e6; break;
        }
    }
    return p;
}

ClassTable default_class_table() {
    ClassTable t;
    for (const auto& pair : all_pairs()) t[pair_key(pair)] = default_params(pair);
    return t;
}

namespace {

json params_to_json(const SynthParams& p) {
    json j;
    j["pulse_width_s"] = p.pulse_width_s;
    j["pri_s"] = p.pri_s;
    j["carrier_offset_hz"] = p.carrier_offset_hz;
    j["sweep_bandwidth_hz"] = p.sweep_bandwidth_hz;
    j["sweep_period_s"] = p.sweep_period_s;
    j["symbol_rate_hz"] = p.symbol_rate_hz;
    j["shaping"] = p.shaping == PulseShape::rect ? "rect" : "raised-cosine";
    j["rolloff"] = p.rolloff;
    j["freq_deviation_hz"] = p.freq_deviation_hz;
    j["gaussian_bt"] = p.gaussian_bt;
    j["message_low_hz"] = p.message_low_hz;
    j["message_high_hz"] = p.message_high_hz;
    j["modulation_index"] = p.modulation_index;
    j["max_random_offset_hz"] = p.max_random_offset_hz;
    j["nominal_obw_hz"] = p.nominal_obw_hz;
    return j;
}

SynthParams params_from_json(const json& j) {
    SynthParams p;
    p.pulse_width_s = j.value("pulse_width_s", 0.0);
    p.pri_s = j.value("pri_s", 0.0);
    p.carrier_offset_hz = j.value("carrier_offset_hz", 0.0);
    p.sweep_bandwidth_hz = j.value("sweep_bandwidth_hz", 0.0);
    p.sweep_period_s = j.value("sweep_period_s", 0.0);
    p.symbol_rate_hz = j.value("symbol_rate_hz", 0.0);
    p.shaping = j.value("shaping", "raised-cosine") == std::string("rect") ? PulseShape::rect
                                                                           : PulseShape::raised_cosine;
    p.rolloff = j.value("rolloff", 0.35);
    p.freq_deviation_hz = j.value("freq_deviation_hz", 0.0);
    p.gaussian_bt = j.value("gaussian_bt", 0.5);
    p.message_low_hz = j.value("message_low_hz", 300.0);
    p.message_high_hz = j.value("message_high_hz", 5000.0);
    p.modulation_index = j.value("modulation_index", 0.5);
    p.max_random_offset_hz = j.value("max_random_offset_hz", 0.0);
    p.nominal_obw_hz = j.value("nominal_obw_hz", 0.0);
    return p;
}

}  // namespace

std::string class_table_to_json(const ClassTable& table) {
    json j;
    for (const auto& [key, params] : table) j[key] = params_to_json(params);
    return j.dump(2);
}

ClassTable class_table_from_json(const std::string& json_text) {
    ClassTable t;
    const json j = json::parse(json_text);
    for (auto it = j.begin(); it != j.end(); ++it) {
        pair_from_key(it.key());  // validates
        t[it.key()] = params_from_json(it.value());
    }
    return t;
}

void validate_params(Modulation mod, const SynthParams& p) {
    const double nyq = kSampleRateHz / 2.0;
    const double frame_s = kFrameLen / kSampleRateHz;
    auto reject = [&](const std::string& why) {
        throw std::invalid_argument(std::string("synth params for ") + to_string(mod) + ": " + why);
    };

    switch (mod) {
        case Modulation::PCW:
            if (p.pulse_width_s <= 0 || p.pri_s <= p.pulse_width_s) reject("need 0 < pulse width < PRI");
            if (p.pulse_width_s >= frame_s) reject("pulse width must fit a 128-sample window");
            if (std::abs(p.carrier_offset_hz) + 2.0 / p.pulse_width_s > nyq) reject("pulse spectrum exceeds Nyquist");
            break;
        case Modulation::FMCW:
            if (p.sweep_bandwidth_hz <= 0 || p.sweep_period_s <= 0) reject("need positive sweep bandwidth/period");
            if (p.sweep_bandwidth_hz / 2.0 + std::abs(p.carrier_offset_hz) > nyq) reject("sweep exceeds Nyquist");
            break;
        case Modulation::BPSK:
        case Modulation::ASK:
        case Modulation::DSSS_CCK: {
            if (p.symbol_rate_hz <= 0) reject("need positive symbol rate");
            const double half_bw = p.shaping == PulseShape::raised_cosine
                                       ? p.symbol_rate_hz * (1.0 + p.rolloff) / 2.0
                                       : p.symbol_rate_hz;  // rect: first-null proxy
            if (half_bw + p.max_random_offset_hz > nyq) reject("symbol rate exceeds Nyquist");
            break;
        }
        case Modulation::GFSK:
            if (p.symbol_rate_hz <= 0 || p.freq_deviation_hz <= 0) reject("need positive rate and deviation");
            if (p.freq_deviation_hz + p.symbol_rate_hz + p.max_random_offset_hz > nyq)
                reject("deviation plus rate exceeds Nyquist");
            break;
        case Modulation::DSSS_OQPSK:
            if (p.symbol_rate_hz <= 0) reject("need positive chip rate");
            if (1.2 * p.symbol_rate_hz + p.max_random_offset_hz > nyq) reject("chip rate exceeds Nyquist");
            break;
        case Modulation::AM_DSB:
        case Modulation::AM_SSB:
            if (p.message_high_hz <= p.message_low_hz || p.message_low_hz <= 0) reject("bad message band");
            if (p.message_high_hz + p.max_random_offset_hz > nyq) reject("message band exceeds Nyquist");
            if (p.modulation_index < 0 || p.modulation_index > 1) reject("modulation index must be in [0,1]");
            break;
    }
}

}  // namespace radcom::synth
