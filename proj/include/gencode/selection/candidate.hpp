#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gencode/ir/lang.hpp"
#include "gencode/refactor/refactor.hpp"
#include "gencode/textops/text_ops.hpp"

namespace gencode::selection {

struct Original {
  bool operator==(const Original&) const = default;
};

using Operator = std::variant<Original, refactor::RefactorKind, textops::TextOpKind>;

// "original", or the refactor / text-op snake_case name.
std::string operator_name(const Operator& op);
std::optional<Operator> parse_operator(std::string_view name);

// The 18 refactorings followed by the 5 text ops.
std::vector<Operator> all_operators();

// Stable position of an operator in all_operators(); Original is 23.
std::size_t operator_index(const Operator& op);

struct Candidate {
  std::string id;
  std::string origin_id;
  std::size_t origin_index = 0;  // position of the origin in the program list
  Operator op;
  std::string content;
  ir::Lang lang = ir::Lang::JavaLite;
  std::size_t label = 0;  // always the origin's label
  std::optional<double> loss;
};

}  // namespace gencode::selection
