#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gencode/ir/program.hpp"

namespace gencode::experiments {

enum class LangMix { Java, Python, Both };

// Synthetic classification corpus: one algorithm per class, rendered with
// random identifiers, shuffled declarations and distractor statements. Every
// program has a helper function followed by the entry function, never
// prints, and carries io_pairs computed by the interpreter.
struct CorpusConfig {
  std::size_t classes = 10;  // <= template_count()
  std::size_t per_class = 50;
  LangMix langs = LangMix::Both;
  std::size_t io_pairs = 5;
  std::uint64_t seed = 0;
  std::string id_prefix = "p";
};

std::size_t template_count();
std::string_view template_name(std::size_t index);

// Throws Error(Usage, "InvalidConfig") for zero or too many classes.
std::vector<ir::Program> generate_corpus(const CorpusConfig& cfg);

struct Split {
  std::vector<ir::Program> train;
  std::vector<ir::Program> test;
};

// Stratified by label; each class contributes round(test_fraction * size)
// programs to the test side.
Split split_corpus(std::span<const ir::Program> programs, double test_fraction,
                   std::uint64_t seed);

}  // namespace gencode::experiments
