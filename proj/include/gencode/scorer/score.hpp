#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gencode/ir/lang.hpp"
#include "gencode/scorer/model.hpp"

namespace gencode::scorer {

// One program text to score against its (inherited) label.
struct ScoreRequest {
  std::string id;
  std::string text;
  ir::Lang lang = ir::Lang::JavaLite;
  std::size_t label = 0;
};

class Scorer {
 public:
  virtual ~Scorer() = default;
  // One result per request, in request order. All-or-nothing: on failure
  // nothing is returned.
  virtual std::vector<ScoredCandidate> score(std::span<const ScoreRequest> requests) = 0;
};

// Lenient tokenization then featurize; syntax-broken text is scored as is.
FeatureVector featurize_text(const std::string& text, ir::Lang lang, std::size_t dim);

// Built-in model; scoring is OpenMP-parallel over requests.
class BuiltinScorer final : public Scorer {
 public:
  explicit BuiltinScorer(const ModelState& model) : model_(model) {}
  std::vector<ScoredCandidate> score(std::span<const ScoreRequest> requests) override;

 private:
  const ModelState& model_;
};

// Serial reference for the parallel path.
std::vector<ScoredCandidate> score_batch_serial(const ModelState& model,
                                                std::span<const ScoreRequest> requests);
std::vector<ScoredCandidate> score_batch_parallel(const ModelState& model,
                                                  std::span<const ScoreRequest> requests);

// Same contract for pre-featurized inputs.
std::vector<ScoredCandidate> score_features_serial(const ModelState& model,
                                                   std::span<const LabeledFeatures> items);
std::vector<ScoredCandidate> score_features_parallel(const ModelState& model,
                                                     std::span<const LabeledFeatures> items);

std::vector<ScoredCandidate> score_batch(Scorer& scorer, std::span<const ScoreRequest> requests);

}  // namespace gencode::scorer
