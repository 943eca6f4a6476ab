#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gencode/ir/program.hpp"
#include "gencode/scorer/external.hpp"
#include "gencode/scorer/model.hpp"
#include "gencode/selection/candidate.hpp"
#include "gencode/selection/select.hpp"
#include "gencode/textops/text_ops.hpp"

namespace gencode::experiments {

struct TrainConfig {
  std::size_t epochs = 50;
  std::size_t early_stop_patience = 20;
  std::size_t repetitions = 5;
  std::vector<std::uint64_t> seeds;  // empty: 0 .. repetitions-1
  selection::SelectionConfig selection;  // k is always |train|
  std::vector<selection::Operator> operators = selection::all_operators();
  textops::TextOpConfig text;
  // seed is derived per run. A zero head makes every epoch-0 loss ln C, so
  // loss-based selection would start from pool order.
  scorer::Hyper hyper = [] {
    scorer::Hyper h;
    h.init_scale = 0.01;
    return h;
  }();
  std::size_t dim = std::size_t{1} << 15;
  std::size_t batch_size = 32;
  std::optional<scorer::ExternalScorerConfig> external_scorer;
  bool record_timing = false;
  bool record_provenance = false;
  bool robustness = true;  // evaluate on the natural-robustness set
  std::uint64_t robustness_seed = 0;
  bool parallel_repetitions = true;
};

// Throws Error(Usage, "InvalidConfig").
void validate(const TrainConfig& cfg);
std::vector<std::uint64_t> run_seeds(const TrainConfig& cfg);

struct EpochMetrics {
  std::size_t epoch = 0;
  double train_loss = 0.0;  // mean cross-entropy of the trained samples, before each step
  double test_accuracy = 0.0;
  std::size_t pool_size = 0;
  std::size_t trained = 0;
  std::size_t skipped = 0;  // (program, operator) cells that produced no candidate
  std::map<std::string, std::size_t> operator_histogram;  // over the trained samples
  std::optional<double> wall_ms;
};

struct ProvenanceRecord {
  std::size_t epoch = 0;
  std::string candidate_id;
  std::string origin_id;
  std::string op;
  std::optional<double> loss;
};

struct RunResult {
  std::uint64_t seed = 0;
  std::vector<EpochMetrics> epochs;
  std::size_t best_epoch = 0;
  double final_accuracy = 0.0;  // test accuracy of the best epoch
  bool stopped_early = false;
  std::optional<double> robustness_accuracy;
  std::optional<double> confidence;           // mean max-probability, best model
  std::optional<double> interclass_distance;  // PCA of test embeddings, best model
  scorer::ModelState model;                   // best model
  std::vector<ProvenanceRecord> provenance;
};

struct ExperimentReport {
  std::size_t classes = 0;
  std::vector<RunResult> runs;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  std::optional<double> mean_robustness;
  std::optional<double> std_robustness;
  std::size_t robustness_unchanged = 0;  // test programs with no eligible refactoring
};

// One pass per epoch over the K = |train| samples selected from that epoch's
// search space. Throws Error(Data, "EmptyDataset"), Error(Data,
// "OverlappingIds"), Error(Data, "LabelOutOfRange"); scorer errors propagate.
ExperimentReport run_gencode(std::span<const ir::Program> train, std::span<const ir::Program> test,
                             const TrainConfig& cfg);

// Same loop with a search space of the originals only.
ExperimentReport run_no_aug(std::span<const ir::Program> train, std::span<const ir::Program> test,
                            const TrainConfig& cfg);

// Fraction of programs the model labels correctly.
double accuracy(const scorer::ModelState& model, std::span<const scorer::LabeledFeatures> items);

std::vector<scorer::LabeledFeatures> featurize_programs(std::span<const ir::Program> programs,
                                                        std::size_t dim);

// Number of classes implied by the labels of both sets (max label + 1).
std::size_t class_count(std::span<const ir::Program> train, std::span<const ir::Program> test);

// Shuffled single passes over `items` in batches; returns the mean
// pre-step cross-entropy of the last epoch.
double train_epochs(scorer::ModelState& model, std::span<const scorer::LabeledFeatures> items,
                    std::size_t epochs, std::size_t batch_size, std::uint64_t seed);

}  // namespace gencode::experiments
