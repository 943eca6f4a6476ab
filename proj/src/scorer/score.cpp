#include "gencode/scorer/score.hpp"

#include "gencode/common/error.hpp"

namespace gencode::scorer {

FeatureVector featurize_text(const std::string& text, ir::Lang lang, std::size_t dim) {
  const std::vector<ir::Token> tokens = ir::tokenize_lenient(text, lang);
  return featurize(tokens, dim);
}

std::vector<ScoredCandidate> score_batch_serial(const ModelState& model,
                                                std::span<const ScoreRequest> requests) {
  std::vector<ScoredCandidate> out;
  out.reserve(requests.size());
  for (const ScoreRequest& r : requests) {
    out.push_back(loss_of(model, featurize_text(r.text, r.lang, model.dim), r.label, r.id));
  }
  return out;
}

std::vector<ScoredCandidate> score_batch_parallel(const ModelState& model,
                                                  std::span<const ScoreRequest> requests) {
  std::vector<ScoredCandidate> out(requests.size());
  const auto n = static_cast<std::ptrdiff_t>(requests.size());
  // Exceptions may not escape an OpenMP region; validate labels up front.
  for (const ScoreRequest& r : requests) {
    if (r.label >= model.classes) {
      throw Error(ErrorFamily::Data, "DimensionMismatch", "label outside class range");
    }
  }
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const ScoreRequest& r = requests[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] =
        loss_of(model, featurize_text(r.text, r.lang, model.dim), r.label, r.id);
  }
  return out;
}

std::vector<ScoredCandidate> score_features_serial(const ModelState& model,
                                                   std::span<const LabeledFeatures> items) {
  std::vector<ScoredCandidate> out;
  out.reserve(items.size());
  for (const LabeledFeatures& it : items) out.push_back(loss_of(model, it.x, it.label));
  return out;
}

std::vector<ScoredCandidate> score_features_parallel(const ModelState& model,
                                                     std::span<const LabeledFeatures> items) {
  for (const LabeledFeatures& it : items) {
    if (it.label >= model.classes || it.x.dim != model.dim) {
      throw Error(ErrorFamily::Data, "DimensionMismatch", "item does not fit the model");
    }
  }
  std::vector<ScoredCandidate> out(items.size());
  const auto n = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        loss_of(model, items[static_cast<std::size_t>(i)].x, items[static_cast<std::size_t>(i)].label);
  }
  return out;
}

std::vector<ScoredCandidate> BuiltinScorer::score(std::span<const ScoreRequest> requests) {
  return score_batch_parallel(model_, requests);
}

std::vector<ScoredCandidate> score_batch(Scorer& scorer, std::span<const ScoreRequest> requests) {
  if (requests.empty()) throw Error(ErrorFamily::Data, "EmptyInput", "score_batch on no candidates");
  return scorer.score(requests);
}

}  // namespace gencode::scorer
