#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gencode/ir/ast.hpp"
#include "gencode/ir/program.hpp"
#include "gencode/ir/token.hpp"
#include "gencode/selection/candidate.hpp"

namespace gencode::selection {

// A program with its parse and token stream computed once.
struct PreparedProgram {
  ir::Program program;
  ir::SyntaxTree tree;
  std::vector<ir::Token> tokens;
};

// Throws LexError / ParseError for programs outside the subset.
std::vector<PreparedProgram> prepare(std::span<const ir::Program> programs);

struct SkipRecord {
  std::string origin_id;
  Operator op;
  std::string reason;  // not_applicable, unsupported_syntax, unchanged, or an error code
};

struct SearchSpace {
  std::vector<Candidate> candidates;
  std::vector<SkipRecord> skips;
};

struct SearchSpaceConfig {
  std::vector<Operator> operators;  // Original entries are ignored; see include_originals
  bool include_originals = true;
  std::uint64_t seed = 0;
  textops::TextOpConfig text;  // seed is overridden per (program, operator)
};

// Seed for one (program, operator) cell.
std::uint64_t cell_seed(std::uint64_t seed, const std::string& program_id, const Operator& op);

// Program-major order: every operator for program 0, then program 1, ...;
// originals (when enabled) follow in program order. OpenMP-parallel over
// cells with a deterministic result.
SearchSpace build_search_space(std::span<const PreparedProgram> programs,
                               const SearchSpaceConfig& cfg);
SearchSpace build_search_space_serial(std::span<const PreparedProgram> programs,
                                      const SearchSpaceConfig& cfg);

SearchSpace build_search_space(std::span<const ir::Program> programs, const SearchSpaceConfig& cfg);

}  // namespace gencode::selection
