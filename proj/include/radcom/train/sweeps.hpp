#pragma once

#include "radcom/train/evaluate.hpp"
#include "radcom/train/trainer.hpp"

namespace radcom::train {

struct WeightSweepPoint {
    double w_mod, w_sig;
    double acc_mod, acc_sig;  // at the probe SNR
    int epochs_run;
    TrainHistory history;
};

struct WeightSweepOptions {
    int probe_snr_db = -2;
    // Evaluate on val+test instead of test alone (steadier estimate on
    // reduced datasets; no model selection happens at the probe SNR).
    bool include_val_in_probe = false;
    std::vector<double> w_sig_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
};

// One fresh training run per grid point, identical init/seed across points;
// endpoints are the single-task baselines.
std::vector<WeightSweepPoint> sweep_task_weights(const data::DatasetContainer& container,
                                                 const mtl::ModelConfig& model_cfg, const TrainConfig& train_cfg,
                                                 const WeightSweepOptions& options = {});

struct DensitySweepPoint {
    mtl::ModelConfig config;
    std::string label;
    std::int64_t param_count;
    TrainHistory history;
    EvalReport report;
};

std::vector<mtl::ModelConfig> default_density_configs();

std::vector<DensitySweepPoint> sweep_density(const data::DatasetContainer& container,
                                             const std::vector<mtl::ModelConfig>& configs,
                                             const TrainConfig& train_cfg, int cm_snr_db = 10);

}  // namespace radcom::train
