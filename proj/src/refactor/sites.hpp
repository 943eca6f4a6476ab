#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gencode/ir/ast.hpp"

namespace gencode::refactor::detail {

// A position between statements of a block where a new statement may go.
struct Slot {
  std::vector<ir::Stmt>* block = nullptr;
  std::size_t pos = 0;
};

// Slots in every block of every function, skipping positions that would be
// unreachable (after a return or break).
std::vector<Slot> statement_slots(ir::SyntaxTree& tree);

// Every block list in every function body.
std::vector<std::vector<ir::Stmt>*> function_blocks(ir::SyntaxTree& tree);

// Expressions statically known to evaluate to an integer (or to fault).
std::vector<ir::Expr*> int_valued_sites(ir::SyntaxTree& tree);

// Renames variable occurrences (uses, assignment targets, declarations,
// loop variables) inside one function.
void rename_variable(ir::Function& fn, const std::string& from, const std::string& to);

// Renames the declaration of function `from` and every call to it.
void rename_function(ir::SyntaxTree& tree, const std::string& from, const std::string& to);

bool declares(const std::vector<ir::Stmt>& stmts, const std::string& name);

}  // namespace gencode::refactor::detail
