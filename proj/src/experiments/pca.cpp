#include "gencode/experiments/pca.hpp"

#include <algorithm>
#include <cmath>

#include "gencode/common/error.hpp"
#include "gencode/common/rng.hpp"
#include "gencode/scorer/score.hpp"

namespace gencode::experiments {

namespace {

constexpr int kMaxIterations = 50000;
constexpr double kTolerance = 1e-13;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double normalize(std::vector<double>& v) {
  const double norm = std::sqrt(dot(v, v));
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return norm;
}

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  // Twice, for numerical safety.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const double c = dot(v, b);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
  }
}

std::vector<double> mat_vec(const std::vector<double>& m, const std::vector<double>& v) {
  const std::size_t d = v.size();
  std::vector<double> out(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) out[r] += m[r * d + c] * v[c];
  }
  return out;
}

std::vector<double> column_mean(const std::vector<std::vector<double>>& rows) {
  std::vector<double> mu(rows.front().size(), 0.0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) mu[j] += r[j];
  }
  for (double& m : mu) m /= static_cast<double>(rows.size());
  return mu;
}

}  // namespace

double captured_variance(const std::vector<std::vector<double>>& rows,
                         std::span<const double> direction) {
  const auto mu = column_mean(rows);
  double s = 0.0;
  for (const auto& r : rows) {
    double p = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) p += (r[j] - mu[j]) * direction[j];
    s += p * p;
  }
  return s / static_cast<double>(rows.size());
}

PcaResult pca_project(const std::vector<std::vector<double>>& rows, std::size_t dims) {
  if (rows.size() < 2) throw Error(ErrorFamily::Data, "DegenerateInput", "pca needs at least 2 rows");
  const std::size_t d = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorFamily::Data, "LengthMismatch", "pca rows differ in length");
  }
  if (dims == 0 || dims > d) {
    throw Error(ErrorFamily::Usage, "InvalidConfig", "pca dims must be in [1, row length]");
  }
  PcaResult res;
  res.mean = column_mean(rows);
  std::vector<double> cov(d * d, 0.0);
  for (const auto& r : rows) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) cov[a * d + b] += (r[a] - res.mean[a]) * (r[b] - res.mean[b]);
    }
  }
  bool all_zero = true;
  for (double& c : cov) {
    c /= static_cast<double>(rows.size());
    if (c != 0.0) all_zero = false;
  }
  if (all_zero) throw Error(ErrorFamily::Data, "DegenerateInput", "pca: all rows are identical");

  Rng rng(0x5eed);
  for (std::size_t k = 0; k < dims; ++k) {
    std::vector<double> v(d);
    for (double& x : v) x = rng.normal();
    orthogonalize(v, res.components);
    normalize(v);
    for (int it = 0; it < kMaxIterations; ++it) {
      std::vector<double> w = mat_vec(cov, v);
      orthogonalize(w, res.components);
      if (normalize(w) == 0.0) break;  // remaining variance is zero; keep v
      double delta = 0.0;
      for (std::size_t j = 0; j < d; ++j) delta = std::max(delta, std::abs(w[j] - v[j]));
      v = std::move(w);
      if (delta < kTolerance) break;
    }
    // Deterministic sign: largest-magnitude coordinate positive.
    std::size_t arg = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (std::abs(v[j]) > std::abs(v[arg])) arg = j;
    }
    if (v[arg] < 0) {
      for (double& x : v) x = -x;
    }
    res.variances.push_back(dot(v, mat_vec(cov, v)));
    res.components.push_back(std::move(v));
  }
  for (const auto& r : rows) {
    std::vector<double> p(dims, 0.0);
    for (std::size_t k = 0; k < dims; ++k) {
      for (std::size_t j = 0; j < d; ++j) p[k] += (r[j] - res.mean[j]) * res.components[k][j];
    }
    res.points.push_back(std::move(p));
  }
  return res;
}

double interclass_distance(std::span<const LabeledPoint> points) {
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].cls == points[j].cls) continue;
      sum += std::hypot(points[i].x - points[j].x, points[i].y - points[j].y);
      ++pairs;
    }
  }
  if (pairs == 0) throw Error(ErrorFamily::Data, "SingleClass", "interclass_distance needs two classes");
  return sum / static_cast<double>(pairs);
}

double mean_max_probability(const scorer::ModelState& model,
                            std::span<const scorer::LabeledFeatures> test) {
  if (test.empty()) throw Error(ErrorFamily::Data, "EmptyInput", "mean_max_probability: empty test set");
  double sum = 0.0;
  std::size_t correct = 0;
  for (const auto& item : test) {
    const auto scored = scorer::loss_of(model, item.x, item.label);
    if (scored.predicted_class != item.label) continue;
    sum += scored.max_probability;
    ++correct;
  }
  if (correct == 0) {
    throw Error(ErrorFamily::Data, "NoCorrectPredictions", "no test sample is classified correctly");
  }
  return sum / static_cast<double>(correct);
}

double mean_max_probability(const scorer::ModelState& model, std::span<const ir::Program> test) {
  std::vector<scorer::LabeledFeatures> items;
  items.reserve(test.size());
  for (const auto& p : test) {
    items.push_back({scorer::featurize_text(p.content, p.lang, model.dim),
                     static_cast<std::size_t>(p.label)});
  }
  return mean_max_probability(model, std::span<const scorer::LabeledFeatures>(items));
}

std::vector<std::vector<double>> embed_programs(const scorer::ModelState& model,
                                                std::span<const ir::Program> programs) {
  std::vector<std::vector<double>> rows;
  rows.reserve(programs.size());
  for (const auto& p : programs) {
    rows.push_back(scorer::embed(model, scorer::featurize_text(p.content, p.lang, model.dim)));
  }
  return rows;
}

}  // namespace gencode::experiments
