#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "radcom/data/vectorize.hpp"
#include "radcom/synth/types.hpp"

namespace radcom::data {

enum class DatasetKind { RadComAWGN, RadComDynamic };

const char* to_string(DatasetKind k);
DatasetKind dataset_kind_from_string(const std::string& s);

// Addresses one record: modulation format, signal class, SNR, sample number.
struct WaveformKey {
    synth::Modulation mod;
    synth::SignalClass sig;
    int snr_db;
    std::uint32_t sample_number;

    WaveformKey(synth::Modulation m, synth::SignalClass s, int snr, std::uint32_t num)
        : mod(m), sig(s), snr_db(snr), sample_number(num) {
        synth::ModSigPair{m, s};          // validates the pairing
        (void)synth::SnrLevel{snr};       // validates the grid
    }

    auto operator<=>(const WaveformKey&) const = default;

    std::string str() const;
};

// (mod, sig, snr) cell used for balanced splitting and per-SNR evaluation.
struct StratumId {
    synth::Modulation mod;
    synth::SignalClass sig;
    int snr_db;
    auto operator<=>(const StratumId&) const = default;
};

struct SplitManifests {
    std::vector<WaveformKey> train, val, test;
};

// Seekable key-value store of vectorized frames with split manifests.
//
// File layout ("RCDS"):
//   0       magic "RCDS"
//   4       u16 format version (little endian, currently 1)
//   6       u32 header length, then header JSON
//   ...     records: 256 x float32 (little endian) each, in key order;
//           record i starts at records_start + 1024*i
//
// The header JSON carries the class enums, the seed registry, the ordered
// key index, and the split manifests as record indices.
class DatasetContainer {
public:
    DatasetKind kind = DatasetKind::RadComAWGN;
    std::uint64_t master_seed = 0;
    int frames_per_stratum = 0;
    bool mirror_paper = false;
    int snr_lo = -20, snr_hi = 18;
    std::string class_table_json;     // per-class synth parameters used
    std::string dynamic_config_json;  // impairment settings (dynamic kind)
    SplitManifests splits;

    void put(const WaveformKey& key, const VectorizedFrame& record);
    const VectorizedFrame& get(const WaveformKey& key) const;
    bool contains(const WaveformKey& key) const { return index_.count(key) > 0; }

    std::size_t size() const { return records_.size(); }
    const std::vector<WaveformKey>& keys() const { return keys_; }
    const VectorizedFrame& record(std::size_t i) const { return records_[i]; }
    std::size_t record_index(const WaveformKey& key) const;

    void save(const std::string& path) const;
    static DatasetContainer load(const std::string& path);

private:
    std::vector<WaveformKey> keys_;
    std::vector<VectorizedFrame> records_;
    std::map<WaveformKey, std::size_t> index_;
};

// Stratified split: every (pair, SNR) stratum is partitioned independently
// at the given ratios (rounded to the nearest record), deterministically in
// the seed. Strata smaller than 10 records are rejected.
SplitManifests make_splits(const DatasetContainer& container, double train_ratio = 0.7, double val_ratio = 0.2,
                           double test_ratio = 0.1, std::uint64_t seed = 0);

}  // namespace radcom::data
