#include "gencode/ir/ast.hpp"

#include "gencode/ir/lang.hpp"

namespace gencode::ir {

bool Block::operator==(const Block& other) const { return stmts == other.stmts; }

bool SwitchCase::operator==(const SwitchCase& other) const {
  return label == other.label && body == other.body;
}

Expr make_ident(std::string name) { return Expr{Ident{std::move(name)}}; }
Expr make_int(std::int64_t value) { return Expr{IntLit{value}}; }
Expr make_bool(bool value) { return Expr{BoolLit{value}}; }
Expr make_str(std::string value) { return Expr{StrLit{std::move(value)}}; }
Expr make_unary(UnaryOp op, Expr operand) { return Expr{Unary{op, std::move(operand)}}; }
Expr make_binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr{Binary{op, std::move(lhs), std::move(rhs)}};
}
Expr make_paren(Expr inner) { return Expr{Paren{std::move(inner)}}; }
Stmt make_stmt(decltype(Stmt::node) node) { return Stmt{std::move(node), {}}; }

std::string_view lang_name(Lang lang) {
  return lang == Lang::JavaLite ? "java" : "python";
}

std::optional<Lang> parse_lang(std::string_view name) {
  if (name == "java" || name == "java-lite") return Lang::JavaLite;
  if (name == "python" || name == "py" || name == "py-lite") return Lang::PyLite;
  return std::nullopt;
}

}  // namespace gencode::ir
