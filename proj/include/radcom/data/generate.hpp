#pragma once

#include <cstdint>

#include "radcom/chan/impair.hpp"
#include "radcom/data/container.hpp"
#include "radcom/synth/params.hpp"

namespace radcom::data {

struct GenerateOptions {
    // Mirror the published composition: drop the Bluetooth/IEEE802.11bg/
    // IEEE802.15.4 pairs from RadComDynamic. Off by default since our three
    // interference classes are synthesized stand-ins, not captures.
    bool mirror_paper = false;
    int snr_lo = -20;
    int snr_hi = 18;
    synth::ClassTable class_table = synth::default_class_table();
    chan::DynamicConfig dynamic_config{};
};

// Per-record seed for a key under a master seed (hash chain over the key
// fields); sub-streams for synthesis/impairment/noise derive from it.
std::uint64_t record_seed(std::uint64_t master_seed, const WaveformKey& key);

// Builds a full container: frames_per_stratum records for every (pair, SNR)
// stratum, already split 70/20/10. Bit-reproducible from (kind,
// frames_per_stratum, master_seed, options).
DatasetContainer generate_dataset(DatasetKind kind, int frames_per_stratum, std::uint64_t master_seed,
                                  const GenerateOptions& options = {});

}  // namespace radcom::data
