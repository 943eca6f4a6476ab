#include "gencode/scorer/model.hpp"

#include <algorithm>
#include <cmath>

#include "gencode/common/error.hpp"
#include "gencode/common/rng.hpp"

namespace gencode::scorer {

namespace {

void check_input(const ModelState& model, const FeatureVector& x) {
  if (x.dim != model.dim) {
    throw Error(ErrorFamily::Data, "DimensionMismatch",
                "feature dimension " + std::to_string(x.dim) + " != model dimension " +
                    std::to_string(model.dim));
  }
}

void check_label(const ModelState& model, std::size_t label) {
  if (label >= model.classes) {
    throw Error(ErrorFamily::Data, "DimensionMismatch",
                "label " + std::to_string(label) + " outside " + std::to_string(model.classes) +
                    " classes");
  }
}

double log_sum_exp(std::span<const double> z) {
  const double peak = *std::max_element(z.begin(), z.end());
  double acc = 0.0;
  for (double v : z) acc += std::exp(v - peak);
  return peak + std::log(acc);
}

}  // namespace

ModelState make_model(std::size_t classes, std::size_t dim, const Hyper& hyper) {
  if (classes < 2) throw Error(ErrorFamily::Usage, "InvalidModel", "need at least two classes");
  if (!is_power_of_two(dim)) {
    throw Error(ErrorFamily::Usage, "InvalidModel", "feature dimension must be a power of two");
  }
  ModelState m;
  m.classes = classes;
  m.dim = dim;
  m.hyper = hyper;
  m.weights.assign(classes * dim, 0.0);
  if (hyper.init_scale > 0.0) {
    Rng rng(hyper.seed);
    for (double& w : m.weights) w = hyper.init_scale * rng.normal();
  }
  if (hyper.optimizer == Optimizer::Adam) {
    m.adam_m.assign(classes * dim, 0.0);
    m.adam_v.assign(classes * dim, 0.0);
  }
  return m;
}

std::vector<double> embed(const ModelState& model, const FeatureVector& x) {
  check_input(model, x);
  std::vector<double> z(model.classes, 0.0);
  for (std::size_t c = 0; c < model.classes; ++c) {
    const double* row = model.weights.data() + c * model.dim;
    double acc = 0.0;
    for (const auto& [j, v] : x.entries) acc += row[j] * v;
    z[c] = acc;
  }
  return z;
}

std::vector<double> softmax(std::span<const double> logits) {
  const double lse = log_sum_exp(logits);
  std::vector<double> p(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) p[i] = std::exp(logits[i] - lse);
  return p;
}

ScoredCandidate loss_of(const ModelState& model, const FeatureVector& x, std::size_t label,
                        std::string id) {
  check_label(model, label);
  const std::vector<double> z = embed(model, x);
  const double lse = log_sum_exp(z);
  ScoredCandidate out;
  out.id = std::move(id);
  out.loss = std::max(0.0, lse - z[label]);
  const auto best = std::max_element(z.begin(), z.end());
  out.predicted_class = static_cast<std::size_t>(best - z.begin());
  out.max_probability = std::exp(*best - lse);
  return out;
}

std::size_t predict(const ModelState& model, const FeatureVector& x) {
  const std::vector<double> z = embed(model, x);
  return static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
}

double objective(const ModelState& model, std::span<const LabeledFeatures> batch) {
  double ce = 0.0;
  for (const LabeledFeatures& ex : batch) {
    check_label(model, ex.label);
    const std::vector<double> z = embed(model, ex.x);
    ce += log_sum_exp(z) - z[ex.label];
  }
  if (!batch.empty()) ce /= static_cast<double>(batch.size());
  double norm = 0.0;
  for (double w : model.weights) norm += w * w;
  return ce + 0.5 * model.hyper.l2 * norm;
}

std::vector<double> gradient(const ModelState& model, std::span<const LabeledFeatures> batch) {
  std::vector<double> g(model.weights.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = model.hyper.l2 * model.weights[i];
  if (batch.empty()) return g;
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (const LabeledFeatures& ex : batch) {
    check_label(model, ex.label);
    const std::vector<double> p = softmax(embed(model, ex.x));
    for (std::size_t c = 0; c < model.classes; ++c) {
      const double coef = (p[c] - (c == ex.label ? 1.0 : 0.0)) * scale;
      double* row = g.data() + c * model.dim;
      for (const auto& [j, v] : ex.x.entries) row[j] += coef * v;
    }
  }
  return g;
}

void train_step_inplace(ModelState& model, std::span<const LabeledFeatures> batch) {
  if (batch.empty()) throw Error(ErrorFamily::Data, "EmptyBatch", "train_step on empty batch");
  const std::vector<double> g = gradient(model, batch);
  const Hyper& h = model.hyper;
  model.step_count += 1;
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  if (h.optimizer == Optimizer::Sgd) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) model.weights[i] -= h.learning_rate * g[i];
    return;
  }
  const double t = static_cast<double>(model.step_count);
  const double c1 = 1.0 - std::pow(h.beta1, t);
  const double c2 = 1.0 - std::pow(h.beta2, t);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double& m = model.adam_m[i];
    double& v = model.adam_v[i];
    m = h.beta1 * m + (1.0 - h.beta1) * g[i];
    v = h.beta2 * v + (1.0 - h.beta2) * g[i] * g[i];
    model.weights[i] -= h.learning_rate * (m / c1) / (std::sqrt(v / c2) + h.eps);
  }
}

ModelState train_step(ModelState model, std::span<const LabeledFeatures> batch) {
  train_step_inplace(model, batch);
  return model;
}

}  // namespace gencode::scorer
