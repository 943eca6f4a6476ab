#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

#include "gencode/experiments/analysis.hpp"
#include "gencode/experiments/corpus.hpp"
#include "gencode/experiments/training.hpp"

namespace gencode::app {

struct RunConfig {
  std::uint64_t seed = 0;
  experiments::TrainConfig train;
  bool no_aug = false;
  experiments::Stage stage = experiments::Stage::Early;
  std::size_t study_groups = 100;
  std::size_t study_finetune_epochs = 3;
  std::optional<std::size_t> study_pre_epochs;
  double study_init_scale = 0.01;
  experiments::CorpusConfig corpus;
  double test_fraction = 2.0 / 7.0;
};

// Strict: unknown keys and wrongly typed values throw Error(Usage,
// "InvalidConfig"). Missing keys keep their defaults.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Canonical form of every field, used for the manifest and its hash.
nlohmann::json config_to_json(const RunConfig& cfg);

// Applies GENCODE_BT_URL when no endpoint is configured.
void apply_environment(RunConfig& cfg);

experiments::StudyConfig study_config(const RunConfig& cfg);

}  // namespace gencode::app
