#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gencode/ir/ast.hpp"

namespace gencode::refactor {

// Syntax- and semantics-preserving rewrites.
enum class RefactorKind {
  ApiRenaming,
  ArgumentsAdding,
  ArgumentsRenaming,
  DeadForAdding,
  DeadIfAdding,
  DeadIfElseAdding,
  DeadSwitchAdding,
  DeadWhileAdding,
  Duplication,
  FieldEnhancement,
  ForLoopEnhancement,
  IfEnhancement,
  LocalVariableAdding,
  LocalVariableRenaming,
  MethodNameRenaming,
  PlusZero,
  PrintAdding,
  ReturnOptimal,
};

inline constexpr std::array<RefactorKind, 18> kAllRefactorKinds = {
    RefactorKind::ApiRenaming,          RefactorKind::ArgumentsAdding,
    RefactorKind::ArgumentsRenaming,    RefactorKind::DeadForAdding,
    RefactorKind::DeadIfAdding,         RefactorKind::DeadIfElseAdding,
    RefactorKind::DeadSwitchAdding,     RefactorKind::DeadWhileAdding,
    RefactorKind::Duplication,          RefactorKind::FieldEnhancement,
    RefactorKind::ForLoopEnhancement,   RefactorKind::IfEnhancement,
    RefactorKind::LocalVariableAdding,  RefactorKind::LocalVariableRenaming,
    RefactorKind::MethodNameRenaming,   RefactorKind::PlusZero,
    RefactorKind::PrintAdding,          RefactorKind::ReturnOptimal,
};

// snake_case, e.g. "dead_if_adding".
std::string_view refactor_kind_name(RefactorKind kind);
std::optional<RefactorKind> parse_refactor_kind(std::string_view name);

enum class RewriteStatus { Applied, NotApplicable, UnsupportedSyntax };

struct RewriteOutcome {
  RewriteStatus status = RewriteStatus::NotApplicable;
  ir::SyntaxTree tree;  // rewritten (and re-canonicalized) when Applied, else the input
  std::string note;
};

// Picks one eligible site uniformly with the seed and rewrites it. Fresh names
// use the smallest unused index. Deterministic in (kind, tree, seed).
RewriteOutcome apply_refactor(RefactorKind kind, const ir::SyntaxTree& tree, std::uint64_t seed);

// Kinds with at least one eligible site, in declaration order.
std::vector<RefactorKind> eligible_kinds(const ir::SyntaxTree& tree);

}  // namespace gencode::refactor
