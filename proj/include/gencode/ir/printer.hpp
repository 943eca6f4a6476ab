#pragma once

#include <string>

#include "gencode/ir/ast.hpp"

namespace gencode::ir {

// Canonical style: 4-space indentation, one statement per line, single
// spaces around binary operators. Parentheses are emitted for Paren nodes and
// wherever precedence requires them, so parse(print(t)) reproduces t for
// trees that came out of the parser.
std::string print(const SyntaxTree& tree);

std::string print_expr(const Expr& expr, Lang lang);

// parse(tokenize(print(tree))): a tree whose spans refer to its printed form.
SyntaxTree canonicalize(const SyntaxTree& tree);

}  // namespace gencode::ir
