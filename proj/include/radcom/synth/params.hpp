#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "radcom/synth/types.hpp"

namespace radcom::synth {

enum class PulseShape { rect, raised_cosine };

// Per-class transmission parameters. Only the fields relevant to a class's
// modulation are read; the rest stay at their zero defaults. The shipped
// table (configs/default.json) documents every class.
struct SynthParams {
    // pulsed radar
    double pulse_width_s = 0.0;
    double pri_s = 0.0;
    double carrier_offset_hz = 0.0;  // fixed class offset
    // fmcw
    double sweep_bandwidth_hz = 0.0;
    double sweep_period_s = 0.0;
    // digital (symbol or chip rate)
    double symbol_rate_hz = 0.0;
    PulseShape shaping = PulseShape::raised_cosine;
    double rolloff = 0.35;
    double freq_deviation_hz = 0.0;  // gfsk
    double gaussian_bt = 0.5;        // gfsk
    // analog message (AM classes)
    double message_low_hz = 300.0;
    double message_high_hz = 5000.0;
    double modulation_index = 0.5;
    // per-frame random carrier offset, uniform in +-this (comm classes)
    double max_random_offset_hz = 0.0;
    // rated 99%-energy occupied bandwidth, used by the spectral sanity gate
    double nominal_obw_hz = 0.0;

    bool operator==(const SynthParams&) const = default;
};

// Built-in table for the 12 pairings; identical to configs/default.json.
SynthParams default_params(const ModSigPair& pair);

using ClassTable = std::map<std::string, SynthParams>;  // key "MOD/SIGNAL"

std::string pair_key(const ModSigPair& pair);
ModSigPair pair_from_key(const std::string& key);

ClassTable default_class_table();

std::string class_table_to_json(const ClassTable& table);
ClassTable class_table_from_json(const std::string& json_text);

// Rejects parameter sets whose occupied band would exceed Nyquist at 10 MS/s
// or that cannot place energy inside a 128-sample window.
void validate_params(Modulation mod, const SynthParams& p);

}  // namespace radcom::synth
