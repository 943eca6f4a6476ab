#include "gencode/selection/select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gencode/common/error.hpp"
#include "gencode/common/rng.hpp"

namespace gencode::selection {

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::MaxLoss: return "max-loss";
    case Strategy::MinLoss: return "min-loss";
    case Strategy::Random: return "random";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::MaxLoss, Strategy::MinLoss, Strategy::Random}) {
    if (strategy_name(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<std::size_t> select_indices(std::span<const std::optional<double>> losses,
                                        const SelectionConfig& cfg) {
  if (cfg.k == 0) throw Error(ErrorFamily::Usage, "InvalidConfig", "selection k must be >= 1");
  const std::size_t n = losses.size();
  const std::size_t k = std::min(cfg.k, n);
  if (cfg.strategy == Strategy::Random) {
    Rng rng(cfg.seed);
    return rng.sample_without_replacement(n, k);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!losses[i] || std::isnan(*losses[i])) {
      throw Error(ErrorFamily::Data, "UnscoredCandidate",
                  "candidate " + std::to_string(i) + " has no loss");
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const bool desc = cfg.strategy == Strategy::MaxLoss;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return desc ? *losses[a] > *losses[b] : *losses[a] < *losses[b];
  });
  order.resize(k);
  return order;
}

std::vector<std::string> select(std::span<const scorer::ScoredCandidate> cands,
                                const SelectionConfig& cfg) {
  std::vector<std::optional<double>> losses;
  losses.reserve(cands.size());
  for (const auto& c : cands) losses.emplace_back(c.loss);
  std::vector<std::string> ids;
  for (std::size_t i : select_indices(losses, cfg)) ids.push_back(cands[i].id);
  return ids;
}

std::vector<std::string> select(std::span<const Candidate> cands, const SelectionConfig& cfg) {
  std::vector<std::optional<double>> losses;
  losses.reserve(cands.size());
  for (const auto& c : cands) losses.push_back(c.loss);
  std::vector<std::string> ids;
  for (std::size_t i : select_indices(losses, cfg)) ids.push_back(cands[i].id);
  return ids;
}

}  // namespace gencode::selection
