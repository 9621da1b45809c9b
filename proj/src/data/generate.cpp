#include "radcom/data/generate.hpp"

#include "radcom/rng.hpp"
#include "radcom/synth/modulators.hpp"

namespace radcom::data {

namespace {
constexpr std::uint64_t kSynthTag = 1;
constexpr std::uint64_t kDynamicTag = 2;
constexpr std::uint64_t kAwgnTag = 3;
constexpr std::uint64_t kSplitTag = 4;

bool is_interference_pair(const synth::ModSigPair& p) {
    return p.signal == synth::SignalClass::Bluetooth || p.signal == synth::SignalClass::IEEE80211bg ||
           p.signal == synth::SignalClass::IEEE802154;
}
}  // namespace

std::uint64_t record_seed(std::uint64_t master_seed, const WaveformKey& key) {
    std::uint64_t s = mix_seed(master_seed, static_cast<std::uint64_t>(key.mod));
    s = mix_seed(s, static_cast<std::uint64_t>(key.sig));
    s = mix_seed(s, static_cast<std::uint64_t>(key.snr_db + 1000));
    s = mix_seed(s, key.sample_number);
    return s;
}

DatasetContainer generate_dataset(DatasetKind kind, int frames_per_stratum, std::uint64_t master_seed,
                                  const GenerateOptions& options) {
    if (frames_per_stratum < 10)
        throw std::invalid_argument("generate_dataset: frames_per_stratum must be >= 10, got " +
                                    std::to_string(frames_per_stratum));

    std::vector<synth::ModSigPair> pairs;
    for (const auto& p : synth::all_pairs()) {
        if (kind == DatasetKind::RadComDynamic && options.mirror_paper && is_interference_pair(p)) continue;
        pairs.push_back(p);
    }

    std::vector<WaveformKey> keys;
    for (const auto& pair : pairs)
        for (const auto snr : synth::snr_grid(options.snr_lo, options.snr_hi))
            for (int i = 0; i < frames_per_stratum; ++i)
                keys.emplace_back(pair.modulation, pair.signal, snr.db, static_cast<std::uint32_t>(i));

    // Records are pure functions of (master_seed, key): fill slots in
    // parallel, then assemble in canonical key order.
    std::vector<VectorizedFrame> records(keys.size());
    const auto n = static_cast<std::int64_t>(keys.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
        const WaveformKey& key = keys[static_cast<std::size_t>(i)];
        const synth::ModSigPair pair{key.mod, key.sig};
        const auto& params = options.class_table.at(synth::pair_key(pair));
        const std::uint64_t rs = record_seed(master_seed, key);

        synth::IQFrame frame = synth::synth_frame(pair, params, mix_seed(rs, kSynthTag));
        if (kind == DatasetKind::RadComDynamic)
            frame = chan::apply_dynamic(frame, options.dynamic_config, mix_seed(rs, kDynamicTag));
        frame = chan::apply_awgn(frame, static_cast<double>(key.snr_db), mix_seed(rs, kAwgnTag));
        records[static_cast<std::size_t>(i)] = normalize_vectorize(frame);
    }

    DatasetContainer c;
    c.kind = kind;
    c.master_seed = master_seed;
    c.frames_per_stratum = frames_per_stratum;
    c.mirror_paper = options.mirror_paper;
    c.snr_lo = options.snr_lo;
    c.snr_hi = options.snr_hi;
    c.class_table_json = synth::class_table_to_json(options.class_table);
    if (kind == DatasetKind::RadComDynamic) c.dynamic_config_json = chan::dynamic_config_to_json(options.dynamic_config);
    for (std::size_t i = 0; i < keys.size(); ++i) c.put(keys[i], records[i]);
    c.splits = make_splits(c, 0.7, 0.2, 0.1, mix_seed(master_seed, kSplitTag));
    return c;
}

}  // namespace radcom::data
