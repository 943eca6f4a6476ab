#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gencode/scorer/features.hpp"

namespace gencode::scorer {

enum class Optimizer { Adam, Sgd };

struct Hyper {
  double learning_rate = 1e-3;
  double l2 = 1e-5;
  Optimizer optimizer = Optimizer::Adam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double init_scale = 0.0;  // stddev of the initial weights; 0 gives the zero model
  std::uint64_t seed = 0;

  bool operator==(const Hyper&) const = default;
};

// Multinomial logistic regression over hashed features, no bias term.
struct ModelState {
  std::size_t classes = 0;
  std::size_t dim = 0;
  std::vector<double> weights;  // classes x dim, row-major
  std::vector<double> adam_m;   // first moments (Adam only)
  std::vector<double> adam_v;   // second moments (Adam only)
  std::uint64_t step_count = 0;
  Hyper hyper;

  bool operator==(const ModelState&) const = default;
};

struct LabeledFeatures {
  FeatureVector x;
  std::size_t label = 0;
};

struct ScoredCandidate {
  std::string id;
  double loss = 0.0;  // -ln p(label)
  std::size_t predicted_class = 0;
  double max_probability = 0.0;

  bool operator==(const ScoredCandidate&) const = default;
};

// Throws Error(Usage, "InvalidModel") unless classes >= 2 and dim is a power
// of two. Weights are init_scale * N(0, 1) drawn from hyper.seed.
ModelState make_model(std::size_t classes, std::size_t dim, const Hyper& hyper);

// Pre-softmax logits. Throws Error(Data, "DimensionMismatch").
std::vector<double> embed(const ModelState& model, const FeatureVector& x);

std::vector<double> softmax(std::span<const double> logits);

ScoredCandidate loss_of(const ModelState& model, const FeatureVector& x, std::size_t label,
                        std::string id = {});

// Mean cross-entropy over the batch plus 0.5 * l2 * ||W||^2.
double objective(const ModelState& model, std::span<const LabeledFeatures> batch);

// Dense gradient of objective() with respect to the weights.
std::vector<double> gradient(const ModelState& model, std::span<const LabeledFeatures> batch);

// One optimizer step. Throws Error(Data, "EmptyBatch") on an empty batch.
void train_step_inplace(ModelState& model, std::span<const LabeledFeatures> batch);
ModelState train_step(ModelState model, std::span<const LabeledFeatures> batch);

std::size_t predict(const ModelState& model, const FeatureVector& x);

}  // namespace gencode::scorer
