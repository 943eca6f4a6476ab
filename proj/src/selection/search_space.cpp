#include "gencode/selection/search_space.hpp"

#include <optional>

#include "gencode/common/error.hpp"
#include "gencode/common/hash.hpp"
#include "gencode/common/rng.hpp"
#include "gencode/ir/parser.hpp"
#include "gencode/ir/printer.hpp"

namespace gencode::selection {

namespace {

struct CellResult {
  std::optional<Candidate> candidate;
  std::optional<SkipRecord> skip;
};

Candidate make_candidate(const PreparedProgram& p, std::size_t index, const Operator& op,
                         std::string content) {
  Candidate c;
  c.origin_id = p.program.id;
  c.id = p.program.id + "::" + operator_name(op);
  c.origin_index = index;
  c.op = op;
  c.content = std::move(content);
  c.lang = p.program.lang;
  c.label = static_cast<std::size_t>(p.program.label);
  return c;
}

CellResult run_cell(const PreparedProgram& p, std::size_t index, const Operator& op,
                    const SearchSpaceConfig& cfg) {
  CellResult out;
  auto skip = [&](std::string reason) {
    out.skip = SkipRecord{p.program.id, op, std::move(reason)};
  };
  const std::uint64_t seed = cell_seed(cfg.seed, p.program.id, op);
  try {
    if (const auto* r = std::get_if<refactor::RefactorKind>(&op)) {
      auto outcome = refactor::apply_refactor(*r, p.tree, seed);
      if (outcome.status == refactor::RewriteStatus::NotApplicable) {
        skip("not_applicable");
      } else if (outcome.status == refactor::RewriteStatus::UnsupportedSyntax) {
        skip("unsupported_syntax");
      } else {
        out.candidate = make_candidate(p, index, op, ir::print(outcome.tree));
      }
    } else if (const auto* t = std::get_if<textops::TextOpKind>(&op)) {
      textops::TextOpConfig tc = cfg.text;
      tc.seed = seed;
      auto tokens = textops::apply_text_op(*t, p.tokens, p.program.lang, tc);
      std::string content = ir::detokenize(tokens);
      if (content == p.program.content) {
        skip("unchanged");
      } else {
        out.candidate = make_candidate(p, index, op, std::move(content));
      }
    }
  } catch (const Error& e) {
    skip(e.code());
  }
  return out;
}

std::vector<Operator> transform_ops(const SearchSpaceConfig& cfg) {
  std::vector<Operator> ops;
  for (const Operator& op : cfg.operators) {
    if (!std::holds_alternative<Original>(op)) ops.push_back(op);
  }
  return ops;
}

SearchSpace assemble(std::span<const PreparedProgram> programs, const SearchSpaceConfig& cfg,
                     std::vector<CellResult>& cells) {
  SearchSpace space;
  for (CellResult& cell : cells) {
    if (cell.candidate) space.candidates.push_back(std::move(*cell.candidate));
    if (cell.skip) space.skips.push_back(std::move(*cell.skip));
  }
  if (cfg.include_originals) {
    for (std::size_t i = 0; i < programs.size(); ++i) {
      space.candidates.push_back(
          make_candidate(programs[i], i, Operator{Original{}}, programs[i].program.content));
    }
  }
  return space;
}

}  // namespace

std::vector<PreparedProgram> prepare(std::span<const ir::Program> programs) {
  std::vector<PreparedProgram> out;
  out.reserve(programs.size());
  for (const ir::Program& p : programs) {
    PreparedProgram prep;
    prep.program = p;
    prep.tokens = ir::tokenize(p.content, p.lang);
    prep.tree = ir::parse(prep.tokens, p.lang);
    out.push_back(std::move(prep));
  }
  return out;
}

std::uint64_t cell_seed(std::uint64_t seed, const std::string& program_id, const Operator& op) {
  return mix_seed(mix_seed(seed, fnv1a64(program_id)), operator_index(op));
}

SearchSpace build_search_space_serial(std::span<const PreparedProgram> programs,
                                      const SearchSpaceConfig& cfg) {
  textops::validate(cfg.text);
  const auto ops = transform_ops(cfg);
  std::vector<CellResult> cells(programs.size() * ops.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i] = run_cell(programs[i / ops.size()], i / ops.size(), ops[i % ops.size()], cfg);
  }
  return assemble(programs, cfg, cells);
}

SearchSpace build_search_space(std::span<const PreparedProgram> programs,
                               const SearchSpaceConfig& cfg) {
  textops::validate(cfg.text);
  const auto ops = transform_ops(cfg);
  std::vector<CellResult> cells(programs.size() * ops.size());
  const auto n = static_cast<long long>(cells.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    cells[u] = run_cell(programs[u / ops.size()], u / ops.size(), ops[u % ops.size()], cfg);
  }
  return assemble(programs, cfg, cells);
}

SearchSpace build_search_space(std::span<const ir::Program> programs,
                               const SearchSpaceConfig& cfg) {
  const auto prepared = prepare(programs);
  return build_search_space(std::span<const PreparedProgram>(prepared), cfg);
}

}  // namespace gencode::selection
