#pragma once

#include <functional>
#include <vector>

#include "radcom/data/container.hpp"
#include "radcom/mtl/model.hpp"

namespace radcom::train {

struct EvalReport {
    std::vector<int> snr_levels;  // ascending, those present in the manifest
    std::vector<double> acc_mod, acc_sig;
    std::vector<int> n_records;
    double overall_mod = 0.0, overall_sig = 0.0;
    int cm_snr_db = 10;
    std::vector<std::vector<int>> confusion_mod;  // [true][pred], 9x9
    std::vector<std::vector<int>> confusion_sig;  // 11x11
};

// (record, key) -> (predicted modulation index, predicted signal index).
using Predictor = std::function<std::pair<int, int>(const data::VectorizedFrame&, const data::WaveformKey&)>;

// Per-SNR accuracies over the manifest plus confusion matrices at cm_snr_db;
// rejects a cm_snr_db with no manifest records.
EvalReport evaluate(const Predictor& predict, const data::DatasetContainer& container,
                    const std::vector<data::WaveformKey>& manifest, int cm_snr_db);

// Batched fast path for a trained model (infer mode).
EvalReport evaluate(mtl::MtlModel& model, const data::DatasetContainer& container,
                    const std::vector<data::WaveformKey>& manifest, int cm_snr_db);

}  // namespace radcom::train
