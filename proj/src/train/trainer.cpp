#include "radcom/train/trainer.hpp"

#include <algorithm>
#include <cmath>

#include "radcom/nn/adam.hpp"
#include "radcom/rng.hpp"

namespace radcom::train {

namespace {

constexpr std::uint64_t kShuffleTag = 21;
constexpr std::uint64_t kDropoutTag = 22;

int argmax_row(const Tensor& probs, int row) {
    const int classes = probs.shape[1];
    int best = 0;
    for (int j = 1; j < classes; ++j)
        if (probs[static_cast<std::int64_t>(row) * classes + j] >
            probs[static_cast<std::int64_t>(row) * classes + best])
            best = j;
    return best;
}

struct Snapshot {
    std::vector<Tensor> values;

    static Snapshot take(mtl::MtlModel& model) {
        Snapshot s;
        for (auto& p : model.named_params()) {
            Tensor t = *p.value;
            t.quantize_f32();
            s.values.push_back(std::move(t));
        }
        return s;
    }

    void restore(mtl::MtlModel& model) const {
        auto params = model.named_params();
        for (std::size_t i = 0; i < params.size(); ++i) *params[i].value = values[i];
    }
};

}  // namespace

LabeledSet gather(const data::DatasetContainer& container, const std::vector<data::WaveformKey>& manifest) {
    LabeledSet set;
    set.records.reserve(manifest.size());
    for (const auto& key : manifest) {
        set.records.push_back(container.record_index(key));
        set.mod_labels.push_back(static_cast<int>(key.mod));
        set.sig_labels.push_back(static_cast<int>(key.sig));
        set.snr_db.push_back(key.snr_db);
    }
    return set;
}

Tensor batch_input(const data::DatasetContainer& container, const LabeledSet& set, std::size_t lo, std::size_t hi) {
    const int n = static_cast<int>(hi - lo);
    Tensor x({n, 16, 16, 1});
    for (std::size_t i = lo; i < hi; ++i) {
        const auto& rec = container.record(set.records[i]);
        double* dst = x.data.data() + static_cast<std::int64_t>(i - lo) * 256;
        for (int j = 0; j < 256; ++j) dst[j] = static_cast<double>(rec.values[static_cast<std::size_t>(j)]);
    }
    return x;
}

EpochMetrics evaluate_metrics(mtl::MtlModel& model, const data::DatasetContainer& container, const LabeledSet& set,
                              const mtl::TaskWeights& weights, int batch_size) {
    EpochMetrics m;
    const std::size_t n = set.records.size();
    if (n == 0) throw std::invalid_argument("evaluate_metrics: empty set");
    double sum_mod = 0.0, sum_sig = 0.0;
    std::int64_t correct_mod = 0, correct_sig = 0;
    for (std::size_t lo = 0; lo < n; lo += static_cast<std::size_t>(batch_size)) {
        const std::size_t hi = std::min(n, lo + static_cast<std::size_t>(batch_size));
        const Tensor x = batch_input(container, set, lo, hi);
        auto [mod_probs, sig_probs] = model.forward(x, nn::Mode::infer);
        const int b = static_cast<int>(hi - lo);
        for (int i = 0; i < b; ++i) {
            const int ml = set.mod_labels[lo + static_cast<std::size_t>(i)];
            const int sl = set.sig_labels[lo + static_cast<std::size_t>(i)];
            sum_mod += -std::log(std::max(mod_probs[static_cast<std::int64_t>(i) * model.config().n_mod_classes + ml], 1e-12));
            sum_sig += -std::log(std::max(sig_probs[static_cast<std::int64_t>(i) * model.config().n_sig_classes + sl], 1e-12));
            if (argmax_row(mod_probs, i) == ml) ++correct_mod;
            if (argmax_row(sig_probs, i) == sl) ++correct_sig;
        }
    }
    m.loss_mod = sum_mod / static_cast<double>(n);
    m.loss_sig = sum_sig / static_cast<double>(n);
    m.loss = weights.w_mod * m.loss_mod + weights.w_sig * m.loss_sig;
    m.acc_mod = static_cast<double>(correct_mod) / static_cast<double>(n);
    m.acc_sig = static_cast<double>(correct_sig) / static_cast<double>(n);
    return m;
}

TrainHistory train(mtl::MtlModel& model, const data::DatasetContainer& container,
                   const data::SplitManifests& splits, const TrainConfig& cfg) {
    if (splits.train.empty() || splits.val.empty())
        throw std::invalid_argument("train: empty train or validation split");
    if (cfg.batch_size < 2) throw std::invalid_argument("train: batch size must be >= 2 (batch norm)");

    const LabeledSet train_set = gather(container, splits.train);
    const LabeledSet val_set = gather(container, splits.val);

    nn::AdamState adam;
    adam.lr = cfg.lr;
    model.reseed_dropout(mix_seed(cfg.seed, kDropoutTag));
    Rng shuffle_rng(mix_seed(cfg.seed, kShuffleTag));

    std::vector<std::size_t> order(train_set.records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    TrainHistory history;
    EarlyStopper stopper(cfg.patience);
    Snapshot best;

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        for (std::size_t i = order.size() - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(shuffle_rng.uniform_int(static_cast<int>(i + 1)));
            std::swap(order[i], order[j]);
        }

        EpochMetrics tm;
        double sum_mod = 0.0, sum_sig = 0.0;
        std::int64_t correct_mod = 0, correct_sig = 0, seen = 0;
        for (std::size_t lo = 0; lo < order.size(); lo += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t hi = std::min(order.size(), lo + static_cast<std::size_t>(cfg.batch_size));
            const int b = static_cast<int>(hi - lo);
            if (b < 2) break;  // trailing singleton cannot feed batch norm

            Tensor x({b, 16, 16, 1});
            std::vector<int> mod_labels(static_cast<std::size_t>(b)), sig_labels(static_cast<std::size_t>(b));
            for (int i = 0; i < b; ++i) {
                const std::size_t src = order[lo + static_cast<std::size_t>(i)];
                const auto& rec = container.record(train_set.records[src]);
                double* dst = x.data.data() + static_cast<std::int64_t>(i) * 256;
                for (int j = 0; j < 256; ++j) dst[j] = static_cast<double>(rec.values[static_cast<std::size_t>(j)]);
                mod_labels[static_cast<std::size_t>(i)] = train_set.mod_labels[src];
                sig_labels[static_cast<std::size_t>(i)] = train_set.sig_labels[src];
            }

            auto [mod_probs, sig_probs] = model.forward(x, nn::Mode::train);
            const mtl::MtlLoss loss = mtl::mtl_loss(mod_probs, sig_probs, mod_labels, sig_labels, cfg.weights);
            sum_mod += loss.mod * b;
            sum_sig += loss.sig * b;
            for (int i = 0; i < b; ++i) {
                if (argmax_row(mod_probs, i) == mod_labels[static_cast<std::size_t>(i)]) ++correct_mod;
                if (argmax_row(sig_probs, i) == sig_labels[static_cast<std::size_t>(i)]) ++correct_sig;
            }
            seen += b;

            model.backward(mtl::ce_prob_grad(mod_probs, mod_labels, cfg.weights.w_mod),
                           mtl::ce_prob_grad(sig_probs, sig_labels, cfg.weights.w_sig));
            nn::adam_step(model.trainable_values(), model.trainable_grads(), adam);
        }
        if (seen == 0) throw std::invalid_argument("train: no usable training batches");
        tm.loss_mod = sum_mod / static_cast<double>(seen);
        tm.loss_sig = sum_sig / static_cast<double>(seen);
        tm.loss = cfg.weights.w_mod * tm.loss_mod + cfg.weights.w_sig * tm.loss_sig;
        tm.acc_mod = static_cast<double>(correct_mod) / static_cast<double>(seen);
        tm.acc_sig = static_cast<double>(correct_sig) / static_cast<double>(seen);

        const EpochMetrics vm = evaluate_metrics(model, container, val_set, cfg.weights);
        history.rows.push_back({epoch, tm, vm});
        history.stopped_epoch = epoch;

        const bool stop = stopper.observe(epoch, vm.loss);
        if (stopper.improved_at(epoch)) {
            best = Snapshot::take(model);
            history.best_epoch = epoch;
        }
        if (stop) {
            history.early_stopped = true;
            break;
        }
    }

    best.restore(model);
    history.final_val = evaluate_metrics(model, container, val_set, cfg.weights);
    return history;
}

mtl::MtlModel transfer_train(const std::string& checkpoint_path, const mtl::ModelConfig& expected_config,
                             const data::DatasetContainer& container, const data::SplitManifests& splits,
                             const TrainConfig& cfg, TrainHistory* history_out) {
    mtl::MtlModel model = mtl::MtlModel::load_checkpoint(checkpoint_path);
    if (!(model.config() == expected_config))
        throw std::invalid_argument("transfer_train: checkpoint architecture " + model.config().describe() +
                                    " does not match requested " + expected_config.describe());
    TrainHistory history = train(model, container, splits, cfg);
    if (history_out) *history_out = history;
    return model;
}

}  // namespace radcom::train
