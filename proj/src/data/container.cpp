#include "radcom/data/container.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

#include "radcom/rng.hpp"
#include "radcom/synth/params.hpp"

static_assert(std::endian::native == std::endian::little, "container io assumes a little-endian host");

namespace radcom::data {

using nlohmann::json;

const char* to_string(DatasetKind k) { return k == DatasetKind::RadComAWGN ? "RadComAWGN" : "RadComDynamic"; }

DatasetKind dataset_kind_from_string(const std::string& s) {
    if (s == "RadComAWGN") return DatasetKind::RadComAWGN;
    if (s == "RadComDynamic") return DatasetKind::RadComDynamic;
    throw std::invalid_argument("unknown dataset kind: " + s + " (expected RadComAWGN or RadComDynamic)");
}

std::string WaveformKey::str() const {
    return std::string(synth::to_string(mod)) + "/" + synth::to_string(sig) + "/" + std::to_string(snr_db) +
           "dB/#" + std::to_string(sample_number);
}

void DatasetContainer::put(const WaveformKey& key, const VectorizedFrame& record) {
    if (index_.count(key)) throw std::invalid_argument("container: duplicate key " + key.str());
    index_[key] = records_.size();
    keys_.push_back(key);
    records_.push_back(record);
}

const VectorizedFrame& DatasetContainer::get(const WaveformKey& key) const {
    const auto it = index_.find(key);
    if (it == index_.end()) throw std::out_of_range("container: key not found: " + key.str());
    return records_[it->second];
}

std::size_t DatasetContainer::record_index(const WaveformKey& key) const {
    const auto it = index_.find(key);
    if (it == index_.end()) throw std::out_of_range("container: key not found: " + key.str());
    return it->second;
}

namespace {

json key_to_json(const WaveformKey& k) {
    return json::array({static_cast<int>(k.mod), static_cast<int>(k.sig), k.snr_db, k.sample_number});
}

std::vector<std::size_t> manifest_indices(const DatasetContainer& c, const std::vector<WaveformKey>& keys) {
    std::vector<std::size_t> idx;
    idx.reserve(keys.size());
    for (const auto& k : keys) idx.push_back(c.record_index(k));
    return idx;
}

}  // namespace

void DatasetContainer::save(const std::string& path) const {
    json header;
    header["kind"] = to_string(kind);
    header["sample_rate_hz"] = static_cast<std::int64_t>(synth::kSampleRateHz);
    header["frame_len"] = synth::kFrameLen;
    header["record_len"] = 256;
    header["master_seed"] = std::to_string(master_seed);
    header["frames_per_stratum"] = frames_per_stratum;
    header["mirror_paper"] = mirror_paper;
    header["snr_lo"] = snr_lo;
    header["snr_hi"] = snr_hi;
    {
        json mods = json::array(), sigs = json::array();
        for (int i = 0; i < synth::kNumModulations; ++i) mods.push_back(synth::to_string(static_cast<synth::Modulation>(i)));
        for (int i = 0; i < synth::kNumSignalClasses; ++i) sigs.push_back(synth::to_string(static_cast<synth::SignalClass>(i)));
        header["modulation_classes"] = mods;
        header["signal_classes"] = sigs;
    }
    header["class_table"] = class_table_json.empty() ? json() : json::parse(class_table_json);
    header["dynamic_config"] = dynamic_config_json.empty() ? json() : json::parse(dynamic_config_json);
    {
        json keys = json::array();
        for (const auto& k : keys_) keys.push_back(key_to_json(k));
        header["keys"] = std::move(keys);
    }
    header["splits"] = {{"train", manifest_indices(*this, splits.train)},
                        {"val", manifest_indices(*this, splits.val)},
                        {"test", manifest_indices(*this, splits.test)}};

    const std::string header_text = header.dump();

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("container: cannot open " + path + " for writing");
    os.write("RCDS", 4);
    const std::uint16_t version = 1;
    os.write(reinterpret_cast<const char*>(&version), 2);
    const std::uint32_t hlen = static_cast<std::uint32_t>(header_text.size());
    os.write(reinterpret_cast<const char*>(&hlen), 4);
    os.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));
    for (const auto& r : records_)
        os.write(reinterpret_cast<const char*>(r.values.data()), 256 * sizeof(float));
    if (!os) throw std::runtime_error("container: write failed for " + path);
}

DatasetContainer DatasetContainer::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("container: cannot open " + path);

    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "RCDS", 4) != 0)
        throw std::runtime_error("container: bad magic in " + path + " (expected RCDS)");
    std::uint16_t version = 0;
    is.read(reinterpret_cast<char*>(&version), 2);
    if (version != 1) throw std::runtime_error("container: unsupported version " + std::to_string(version));
    std::uint32_t hlen = 0;
    if (!is.read(reinterpret_cast<char*>(&hlen), 4)) throw std::runtime_error("container: truncated header length");
    std::string header_text(hlen, '\0');
    if (!is.read(header_text.data(), hlen)) throw std::runtime_error("container: truncated header");

    const json header = json::parse(header_text);
    DatasetContainer c;
    c.kind = dataset_kind_from_string(header.at("kind").get<std::string>());
    c.master_seed = std::stoull(header.at("master_seed").get<std::string>());
    c.frames_per_stratum = header.value("frames_per_stratum", 0);
    c.mirror_paper = header.value("mirror_paper", false);
    c.snr_lo = header.value("snr_lo", -20);
    c.snr_hi = header.value("snr_hi", 18);
    if (!header.at("class_table").is_null()) c.class_table_json = header.at("class_table").dump();
    if (!header.at("dynamic_config").is_null()) c.dynamic_config_json = header.at("dynamic_config").dump();

    for (const auto& jk : header.at("keys")) {
        const WaveformKey key(static_cast<synth::Modulation>(jk.at(0).get<int>()),
                              static_cast<synth::SignalClass>(jk.at(1).get<int>()), jk.at(2).get<int>(),
                              jk.at(3).get<std::uint32_t>());
        VectorizedFrame rec;
        if (!is.read(reinterpret_cast<char*>(rec.values.data()), 256 * sizeof(float)))
            throw std::runtime_error("container: truncated records in " + path);
        c.put(key, rec);
    }

    auto manifest = [&](const char* name) {
        std::vector<WaveformKey> keys;
        for (const auto& idx : header.at("splits").at(name)) keys.push_back(c.keys()[idx.get<std::size_t>()]);
        return keys;
    };
    c.splits.train = manifest("train");
    c.splits.val = manifest("val");
    c.splits.test = manifest("test");
    return c;
}

SplitManifests make_splits(const DatasetContainer& container, double train_ratio, double val_ratio,
                           double test_ratio, std::uint64_t seed) {
    if (std::abs(train_ratio + val_ratio + test_ratio - 1.0) > 1e-9)
        throw std::invalid_argument("make_splits: ratios must sum to 1");
    if (train_ratio < 0 || val_ratio < 0 || test_ratio < 0)
        throw std::invalid_argument("make_splits: ratios must be non-negative");

    std::map<StratumId, std::vector<WaveformKey>> strata;
    for (const auto& key : container.keys()) strata[{key.mod, key.sig, key.snr_db}].push_back(key);

    SplitManifests out;
    for (auto& [id, keys] : strata) {
        const std::size_t n = keys.size();
        if (n < 10)
            throw std::invalid_argument("make_splits: stratum " + keys.front().str() + " has only " +
                                        std::to_string(n) + " records; need >= 10 to honor the ratios");
        const std::uint64_t stratum_seed =
            mix_seed(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(id.mod)),
                              static_cast<std::uint64_t>(id.sig)),
                     static_cast<std::uint64_t>(id.snr_db + 1000));
        Rng rng(stratum_seed);
        // Fisher-Yates on the canonical key order.
        std::sort(keys.begin(), keys.end());
        for (std::size_t i = n - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(i + 1)));
            std::swap(keys[i], keys[j]);
        }
        const auto n_train = static_cast<std::size_t>(std::lround(train_ratio * static_cast<double>(n)));
        const auto n_val = static_cast<std::size_t>(std::lround(val_ratio * static_cast<double>(n)));
        for (std::size_t i = 0; i < n; ++i) {
            if (i < n_train)
                out.train.push_back(keys[i]);
            else if (i < n_train + n_val)
                out.val.push_back(keys[i]);
            else
                out.test.push_back(keys[i]);
        }
    }
    return out;
}

}  // namespace radcom::data
