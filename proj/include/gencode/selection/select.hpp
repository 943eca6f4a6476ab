#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gencode/scorer/model.hpp"
#include "gencode/selection/candidate.hpp"

namespace gencode::selection {

enum class Strategy { MaxLoss, MinLoss, Random };

std::string_view strategy_name(Strategy s);  // max-loss, min-loss, random
std::optional<Strategy> parse_strategy(std::string_view name);

struct SelectionConfig {
  Strategy strategy = Strategy::MaxLoss;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  bool include_originals = true;
};

// Positions of the chosen entries. MaxLoss: the k largest losses ordered by
// (loss desc, index asc); MinLoss mirrors it; Random: k positions drawn
// without replacement. Loss strategies throw Error(Data, "UnscoredCandidate")
// if any loss is missing or NaN.
std::vector<std::size_t> select_indices(std::span<const std::optional<double>> losses,
                                        const SelectionConfig& cfg);

std::vector<std::string> select(std::span<const scorer::ScoredCandidate> cands,
                                const SelectionConfig& cfg);
std::vector<std::string> select(std::span<const Candidate> cands, const SelectionConfig& cfg);

}  // namespace gencode::selection
