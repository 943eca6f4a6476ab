#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gencode/experiments/analysis.hpp"
#include "gencode/experiments/pca.hpp"
#include "gencode/experiments/stats.hpp"
#include "gencode/experiments/training.hpp"

namespace gencode::experiments {

// Optional fields (timing, robustness, ...) are omitted when absent, so a
// report without timing is a pure function of data, config and seeds.
nlohmann::json report_to_json(const ExperimentReport& report);

// Per-run final accuracies from a serialized report. Throws
// Error(Data, "MalformedReport").
std::vector<double> report_accuracies(const nlohmann::json& report);

// "epoch,accuracy,loss" rows for one run.
std::string curve_csv(const RunResult& run);

// "x,y,class" rows.
std::string pca_csv(std::span<const LabeledPoint> points);

// One JSON object per line.
std::string provenance_jsonl(const RunResult& run);

nlohmann::json study_to_json(const StudyResult& result);
nlohmann::json wilcoxon_to_json(const WilcoxonResult& result);

// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace gencode::experiments
