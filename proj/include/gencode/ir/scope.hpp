#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gencode/ir/ast.hpp"

namespace gencode::ir {

// Every name bound or used anywhere in the unit: functions, globals,
// parameters, locals, loop variables.
std::set<std::string> identifiers(const SyntaxTree& tree);

// `<prefix>_<k>` for the smallest k >= 0 not already in the unit.
std::string fresh_name(const SyntaxTree& tree, std::string_view prefix);
std::string fresh_name(const std::set<std::string>& taken, std::string_view prefix);

// Identifier uses (variables and callees) that resolve to no binding in
// scope, in source order. Empty for well-formed programs.
std::vector<std::string> free_names(const SyntaxTree& tree);

}  // namespace gencode::ir
