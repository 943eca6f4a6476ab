#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gencode/experiments/training.hpp"
#include "gencode/ir/program.hpp"

namespace gencode::experiments {

struct RobustnessSet {
  std::vector<ir::Program> programs;  // same order, ids and labels as the input
  std::vector<std::string> unchanged_ids;  // no eligible refactoring; copied as is
};

// Applies one uniformly chosen eligible refactoring to each program.
// Throws LexError / ParseError for programs outside the subset.
RobustnessSet build_natural_robustness_set(std::span<const ir::Program> test, std::uint64_t seed);

enum class Stage { Early, Mid, Late };

std::string_view stage_name(Stage s);  // early, mid, late
std::optional<Stage> parse_stage(std::string_view name);
std::size_t stage_pre_epochs(Stage s);  // 0, 10, 20

struct StudyConfig {
  TrainConfig train;        // operators, text ops, hyper, dim, batch size
  std::size_t groups = 100;
  std::size_t finetune_epochs = 3;
  std::optional<std::size_t> pre_epochs;  // overrides the stage budget
  double init_scale = 0.01;  // a zero model gives every group the same loss
  std::uint64_t seed = 0;
};

struct StudyResult {
  double pcc = 0.0;
  double p_value = 1.0;
  std::vector<std::pair<double, double>> points;  // (mean loss, accuracy) per group
};

// For each group: sample |train| candidates uniformly from one search space,
// take their mean loss under the stage model, fine-tune a copy of that model
// on them and measure test accuracy. Throws Error(Usage, "InvalidConfig") for
// fewer than 3 groups; DegenerateVariance propagates from pearson().
StudyResult correlation_study(std::span<const ir::Program> train, std::span<const ir::Program> test,
                              Stage stage, const StudyConfig& cfg);

}  // namespace gencode::experiments
