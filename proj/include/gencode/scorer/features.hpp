#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gencode/ir/token.hpp"

namespace gencode::scorer {

// Sparse hashed n-gram counts; entries sorted by index, counts > 0.
struct FeatureVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool operator==(const FeatureVector&) const = default;
};

// Unigrams and adjacent bigrams of the non-layout lexemes, hashed with
// FNV-1a into `dim` buckets. `dim` must be a power of two.
FeatureVector featurize(std::span<const ir::Token> tokens, std::size_t dim);

bool is_power_of_two(std::size_t v);

}  // namespace gencode::scorer
