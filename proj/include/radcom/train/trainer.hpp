#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "radcom/data/container.hpp"
#include "radcom/mtl/model.hpp"

namespace radcom::train {

// Early stopping on validation total loss: a strict improvement resets the
// counter, `patience` consecutive non-improving epochs stop the run.
struct EarlyStopper {
    int patience;
    double best = std::numeric_limits<double>::infinity();
    int best_epoch = 0;
    int bad = 0;

    explicit EarlyStopper(int patience_epochs) : patience(patience_epochs) {}

    // Returns true when training should stop after this (1-based) epoch.
    bool observe(int epoch, double val_loss) {
        if (val_loss < best) {
            best = val_loss;
            best_epoch = epoch;
            bad = 0;
            return false;
        }
        return ++bad >= patience;
    }

    bool improved_at(int epoch) const { return best_epoch == epoch; }
};

struct TrainConfig {
    int epochs = 30;
    int patience = 5;  // consecutive epochs without val-loss improvement
    double lr = 0.001;
    int batch_size = 128;
    mtl::TaskWeights weights{};
    std::uint64_t seed = 1;
};

struct EpochMetrics {
    double loss = 0.0, loss_mod = 0.0, loss_sig = 0.0;
    double acc_mod = 0.0, acc_sig = 0.0;
};

struct TrainHistory {
    struct Row {
        int epoch;  // 1-based
        EpochMetrics train, val;
    };
    std::vector<Row> rows;
    int best_epoch = 0;
    int stopped_epoch = 0;
    bool early_stopped = false;
    // Validation metrics of the returned (best, f32-quantized) parameters;
    // re-evaluating a saved checkpoint reproduces these exactly.
    EpochMetrics final_val;
};

// Record indices plus labels for one manifest.
struct LabeledSet {
    std::vector<std::size_t> records;
    std::vector<int> mod_labels;
    std::vector<int> sig_labels;
    std::vector<int> snr_db;
};

LabeledSet gather(const data::DatasetContainer& container, const std::vector<data::WaveformKey>& manifest);

// [N,16,16,1] input tensor for the subset positions [lo, hi) of a set.
Tensor batch_input(const data::DatasetContainer& container, const LabeledSet& set, std::size_t lo, std::size_t hi);

// Forward the whole set in infer mode (batched) and return metrics.
EpochMetrics evaluate_metrics(mtl::MtlModel& model, const data::DatasetContainer& container, const LabeledSet& set,
                              const mtl::TaskWeights& weights, int batch_size = 256);

// Adam training with early stopping on validation total loss. On return the
// model holds the best-validation parameters, quantized to float32 values.
TrainHistory train(mtl::MtlModel& model, const data::DatasetContainer& container,
                   const data::SplitManifests& splits, const TrainConfig& cfg);

// Warm start from a checkpoint whose architecture must match
// expected_config; then the usual training loop on the (dynamic) container.
mtl::MtlModel transfer_train(const std::string& checkpoint_path, const mtl::ModelConfig& expected_config,
                             const data::DatasetContainer& container, const data::SplitManifests& splits,
                             const TrainConfig& cfg, TrainHistory* history_out = nullptr);

}  // namespace radcom::train
