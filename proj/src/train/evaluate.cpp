#include "radcom/train/evaluate.hpp"

#include <algorithm>
#include <map>

#include "radcom/train/trainer.hpp"

namespace radcom::train {

namespace {

struct Tally {
    std::int64_t n = 0, ok_mod = 0, ok_sig = 0;
};

EvalReport assemble(const std::vector<data::WaveformKey>& manifest, const std::vector<std::pair<int, int>>& preds,
                    int cm_snr_db) {
    if (manifest.empty()) throw std::invalid_argument("evaluate: empty manifest");

    std::map<int, Tally> by_snr;
    EvalReport r;
    r.cm_snr_db = cm_snr_db;
    r.confusion_mod.assign(synth::kNumModulations, std::vector<int>(synth::kNumModulations, 0));
    r.confusion_sig.assign(synth::kNumSignalClasses, std::vector<int>(synth::kNumSignalClasses, 0));

    std::int64_t ok_mod = 0, ok_sig = 0;
    bool cm_seen = false;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const auto& key = manifest[i];
        const auto [pm, ps] = preds[i];
        if (pm < 0 || pm >= synth::kNumModulations || ps < 0 || ps >= synth::kNumSignalClasses)
            throw std::invalid_argument("evaluate: predictor returned out-of-range class index");
        auto& t = by_snr[key.snr_db];
        ++t.n;
        const bool mod_ok = pm == static_cast<int>(key.mod);
        const bool sig_ok = ps == static_cast<int>(key.sig);
        t.ok_mod += mod_ok;
        t.ok_sig += sig_ok;
        ok_mod += mod_ok;
        ok_sig += sig_ok;
        if (key.snr_db == cm_snr_db) {
            cm_seen = true;
            r.confusion_mod[static_cast<std::size_t>(key.mod)][static_cast<std::size_t>(pm)] += 1;
            r.confusion_sig[static_cast<std::size_t>(key.sig)][static_cast<std::size_t>(ps)] += 1;
        }
    }
    if (!cm_seen)
        throw std::invalid_argument("evaluate: no records at requested confusion-matrix SNR " +
                                    std::to_string(cm_snr_db) + " dB");

    for (const auto& [snr, t] : by_snr) {
        r.snr_levels.push_back(snr);
        r.acc_mod.push_back(static_cast<double>(t.ok_mod) / static_cast<double>(t.n));
        r.acc_sig.push_back(static_cast<double>(t.ok_sig) / static_cast<double>(t.n));
        r.n_records.push_back(static_cast<int>(t.n));
    }
    r.overall_mod = static_cast<double>(ok_mod) / static_cast<double>(manifest.size());
    r.overall_sig = static_cast<double>(ok_sig) / static_cast<double>(manifest.size());
    return r;
}

}  // namespace

EvalReport evaluate(const Predictor& predict, const data::DatasetContainer& container,
                    const std::vector<data::WaveformKey>& manifest, int cm_snr_db) {
    std::vector<std::pair<int, int>> preds;
    preds.reserve(manifest.size());
    for (const auto& key : manifest) preds.push_back(predict(container.get(key), key));
    return assemble(manifest, preds, cm_snr_db);
}

EvalReport evaluate(mtl::MtlModel& model, const data::DatasetContainer& container,
                    const std::vector<data::WaveformKey>& manifest, int cm_snr_db) {
    if (manifest.empty()) throw std::invalid_argument("evaluate: empty manifest");
    const LabeledSet set = gather(container, manifest);
    std::vector<std::pair<int, int>> preds(manifest.size());

    constexpr std::size_t kBatch = 256;
    for (std::size_t lo = 0; lo < manifest.size(); lo += kBatch) {
        const std::size_t hi = std::min(manifest.size(), lo + kBatch);
        const Tensor x = batch_input(container, set, lo, hi);
        auto [mod_probs, sig_probs] = model.forward(x, nn::Mode::infer);
        const int b = static_cast<int>(hi - lo);
        for (int i = 0; i < b; ++i) {
            int pm = 0, ps = 0;
            for (int j = 1; j < model.config().n_mod_classes; ++j)
                if (mod_probs[static_cast<std::int64_t>(i) * model.config().n_mod_classes + j] >
                    mod_probs[static_cast<std::int64_t>(i) * model.config().n_mod_classes + pm])
                    pm = j;
            for (int j = 1; j < model.config().n_sig_classes; ++j)
                if (sig_probs[static_cast<std::int64_t>(i) * model.config().n_sig_classes + j] >
                    sig_probs[static_cast<std::int64_t>(i) * model.config().n_sig_classes + ps])
                    ps = j;
            preds[lo + static_cast<std::size_t>(i)] = {pm, ps};
        }
    }
    return assemble(manifest, preds, cm_snr_db);
}

}  // namespace radcom::train
