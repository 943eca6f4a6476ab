#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "gencode/app/config.hpp"
#include "gencode/common/error.hpp"
#include "gencode/experiments/stats.hpp"

namespace gencode::app {

// 0 success, 2 usage, 3 data, 4 scorer, 1 anything else.
int exit_code(ErrorFamily family);

// Each command writes its artifacts plus manifest.json into out_dir
// (created if needed) and a short summary to `log`.

// train.jsonl and test.jsonl from the synthetic generator.
void cmd_gen_corpus(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

// candidates.jsonl and skips.jsonl for one search space.
void cmd_augment(const RunConfig& cfg, const std::string& data_path, const std::string& out_dir,
                 std::ostream& log);

// report.json, curve_seed<S>.csv and model_seed<S>.gcf per run, plus
// provenance_seed<S>.jsonl when enabled.
void cmd_train(const RunConfig& cfg, const std::string& train_path, const std::string& test_path,
               const std::string& out_dir, std::ostream& log);

// eval.json and pca.csv for a checkpoint.
void cmd_eval(const RunConfig& cfg, const std::string& model_path, const std::string& test_path,
              const std::string& out_dir, std::ostream& log);

// study.json.
void cmd_study(const RunConfig& cfg, const std::string& train_path, const std::string& test_path,
               const std::string& out_dir, std::ostream& log);

// Wilcoxon signed-rank over the per-run accuracies of two reports; writes
// stats.json when out_dir is given.
experiments::WilcoxonResult cmd_stats(const std::string& report_a, const std::string& report_b,
                                      const std::optional<std::string>& out_dir, std::ostream& log);

}  // namespace gencode::app
