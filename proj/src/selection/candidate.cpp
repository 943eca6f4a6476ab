#include "gencode/selection/candidate.hpp"

namespace gencode::selection {

std::string operator_name(const Operator& op) {
  if (const auto* r = std::get_if<refactor::RefactorKind>(&op)) {
    return std::string(refactor::refactor_kind_name(*r));
  }
  if (const auto* t = std::get_if<textops::TextOpKind>(&op)) {
    return std::string(textops::text_op_kind_name(*t));
  }
  return "original";
}

std::optional<Operator> parse_operator(std::string_view name) {
  if (name == "original") return Operator{Original{}};
  if (auto r = refactor::parse_refactor_kind(name)) return Operator{*r};
  if (auto t = textops::parse_text_op_kind(name)) return Operator{*t};
  return std::nullopt;
}

std::vector<Operator> all_operators() {
  std::vector<Operator> ops;
  for (auto k : refactor::kAllRefactorKinds) ops.emplace_back(k);
  for (auto k : textops::kAllTextOpKinds) ops.emplace_back(k);
  return ops;
}

std::size_t operator_index(const Operator& op) {
  if (const auto* r = std::get_if<refactor::RefactorKind>(&op)) {
    return static_cast<std::size_t>(*r);
  }
  if (const auto* t = std::get_if<textops::TextOpKind>(&op)) {
    return refactor::kAllRefactorKinds.size() + static_cast<std::size_t>(*t);
  }
  return refactor::kAllRefactorKinds.size() + textops::kAllTextOpKinds.size();
}

}  // namespace gencode::selection
