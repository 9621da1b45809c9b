#include "radcom/train/sweeps.hpp"

#include <cmath>

namespace radcom::train {

std::vector<WeightSweepPoint> sweep_task_weights(const data::DatasetContainer& container,
                                                 const mtl::ModelConfig& model_cfg, const TrainConfig& train_cfg,
                                                 const WeightSweepOptions& options) {
    std::vector<WeightSweepPoint> points;
    for (const double w_sig : options.w_sig_grid) {
        const double w_mod = 1.0 - w_sig;
        TrainConfig cfg = train_cfg;
        cfg.weights = mtl::TaskWeights(w_mod, w_sig);

        mtl::MtlModel model = mtl::MtlModel::build(model_cfg, cfg.seed);
        TrainHistory history = train(model, container, container.splits, cfg);

        std::vector<data::WaveformKey> probe;
        for (const auto& k : container.splits.test)
            if (k.snr_db == options.probe_snr_db) probe.push_back(k);
        if (options.include_val_in_probe)
            for (const auto& k : container.splits.val)
                if (k.snr_db == options.probe_snr_db) probe.push_back(k);
        if (probe.empty())
            throw std::invalid_argument("sweep_task_weights: no test records at probe SNR " +
                                        std::to_string(options.probe_snr_db) + " dB");
        const EvalReport report = evaluate(model, container, probe, options.probe_snr_db);

        WeightSweepPoint p;
        p.w_mod = w_mod;
        p.w_sig = w_sig;
        p.acc_mod = report.overall_mod;
        p.acc_sig = report.overall_sig;
        p.epochs_run = history.stopped_epoch;
        p.history = std::move(history);
        points.push_back(std::move(p));
    }
    return points;
}

std::vector<mtl::ModelConfig> default_density_configs() {
    mtl::ModelConfig base;  // (8,4,256,4,256)
    mtl::ModelConfig dense1 = base;
    dense1.c_sh = 16;
    dense1.c_m = dense1.c_s = 8;
    dense1.f_m = dense1.f_s = 512;
    mtl::ModelConfig c2_sh = base;
    c2_sh.variant = mtl::ModelVariant::c2_sh;
    mtl::ModelConfig c2_sh_tasks = base;
    c2_sh_tasks.variant = mtl::ModelVariant::c2_sh_tasks;
    return {base, dense1, c2_sh, c2_sh_tasks};
}

std::vector<DensitySweepPoint> sweep_density(const data::DatasetContainer& container,
                                             const std::vector<mtl::ModelConfig>& configs,
                                             const TrainConfig& train_cfg, int cm_snr_db) {
    std::vector<DensitySweepPoint> points;
    for (const auto& cfg : configs) {
        mtl::MtlModel model = mtl::MtlModel::build(cfg, train_cfg.seed);
        DensitySweepPoint p;
        p.config = cfg;
        p.label = cfg.describe();
        p.param_count = model.parameter_count();
        p.history = train(model, container, container.splits, train_cfg);
        p.report = evaluate(model, container, container.splits.test, cm_snr_db);
        points.push_back(std::move(p));
    }
    return points;
}

}  // namespace radcom::train
