#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gencode/ir/program.hpp"
#include "gencode/scorer/model.hpp"

namespace gencode::experiments {

struct PcaResult {
  std::vector<double> mean;
  std::vector<std::vector<double>> components;  // unit vectors, descending variance
  std::vector<double> variances;                // variance captured per component
  std::vector<std::vector<double>> points;      // centered projections
};

// Projects onto the top `dims` covariance eigenvectors, found by power
// iteration with deflation. Throws Error(Data, "DegenerateInput") when all
// rows coincide, Error(Data, "LengthMismatch") on ragged input and
// Error(Usage, "InvalidConfig") when dims exceeds the row length.
PcaResult pca_project(const std::vector<std::vector<double>>& rows, std::size_t dims = 2);

// Variance of the centered rows along unit vector `direction`.
double captured_variance(const std::vector<std::vector<double>>& rows,
                         std::span<const double> direction);

struct LabeledPoint {
  double x = 0.0;
  double y = 0.0;
  std::size_t cls = 0;
};

// Mean Euclidean distance over all pairs with different classes.
// Throws Error(Data, "SingleClass").
double interclass_distance(std::span<const LabeledPoint> points);

// Mean max-probability over the correctly classified programs.
// Throws Error(Data, "EmptyInput") or Error(Data, "NoCorrectPredictions").
double mean_max_probability(const scorer::ModelState& model, std::span<const ir::Program> test);
double mean_max_probability(const scorer::ModelState& model,
                            std::span<const scorer::LabeledFeatures> test);

// Logit embeddings of the programs, one row each.
std::vector<std::vector<double>> embed_programs(const scorer::ModelState& model,
                                                std::span<const ir::Program> programs);

}  // namespace gencode::experiments
