#pragma once

#include <string>
#include <vector>

#include "radcom/train/evaluate.hpp"
#include "radcom/train/sweeps.hpp"

namespace radcom::report {

// Column schemas are fixed; see docs/formats.md.

std::string history_csv(const train::TrainHistory& history);
std::string eval_csv(const train::EvalReport& report);
std::string confusion_csv(const std::vector<std::vector<int>>& matrix, const std::vector<std::string>& names);
std::string weight_sweep_csv(const std::vector<train::WeightSweepPoint>& points);
std::string density_sweep_csv(const std::vector<train::DensitySweepPoint>& points);

void write_file(const std::string& path, const std::string& content);

}  // namespace radcom::report
