#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gencode/ir/box.hpp"
#include "gencode/ir/lang.hpp"

namespace gencode::ir {

// Declared types. PyLite declarations carry Dynamic.
enum class TypeName { Int, Boolean, String, Void, Dynamic };

enum class UnaryOp { Neg, Not };

enum class BinaryOp {
  Add, Sub, Mul, Div, FloorDiv, Mod,
  Lt, Le, Gt, Ge, Eq, Ne,
  And, Or,
};

struct Expr;

struct Ident {
  std::string name;
  bool operator==(const Ident&) const = default;
};
struct IntLit {
  std::int64_t value = 0;
  bool operator==(const IntLit&) const = default;
};
struct BoolLit {
  bool value = false;
  bool operator==(const BoolLit&) const = default;
};
struct StrLit {
  std::string value;
  bool operator==(const StrLit&) const = default;
};
struct Unary {
  UnaryOp op = UnaryOp::Neg;
  Box<Expr> operand;
  bool operator==(const Unary&) const = default;
};
struct Binary {
  BinaryOp op = BinaryOp::Add;
  Box<Expr> lhs;
  Box<Expr> rhs;
  bool operator==(const Binary&) const = default;
};
struct Call {
  std::string callee;
  std::vector<Box<Expr>> args;
  bool operator==(const Call&) const = default;
};
// Explicit source parentheses are kept so print/parse is a fixpoint.
struct Paren {
  Box<Expr> inner;
  bool operator==(const Paren&) const = default;
};

struct Expr {
  std::variant<Ident, IntLit, BoolLit, StrLit, Unary, Binary, Call, Paren> node;
  bool operator==(const Expr&) const = default;
};

struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct Stmt;

struct Block {
  std::vector<Stmt> stmts;
  bool operator==(const Block&) const;
};

struct VarDecl {
  TypeName type = TypeName::Int;
  std::string name;
  std::optional<Expr> init;
  bool operator==(const VarDecl&) const = default;
};
struct Assign {
  std::string target;
  Expr value;
  bool operator==(const Assign&) const = default;
};
struct If {
  Expr cond;
  Block then_block;
  std::optional<Block> else_block;
  bool operator==(const If&) const = default;
};
// JavaLite `for (init; cond; update) { ... }`.
struct For {
  Box<Stmt> init;
  Expr cond;
  Box<Stmt> update;
  Block body;
  bool operator==(const For&) const = default;
};
// PyLite `for var in range(start, stop):`.
struct ForRange {
  std::string var;
  Expr start;
  Expr stop;
  Block body;
  bool operator==(const ForRange&) const = default;
};
struct While {
  Expr cond;
  Block body;
  bool operator==(const While&) const = default;
};
struct SwitchCase {
  std::optional<std::int64_t> label;  // nullopt: default
  std::vector<Stmt> body;
  bool operator==(const SwitchCase&) const;
};
struct Switch {
  Expr subject;
  std::vector<SwitchCase> cases;
  bool operator==(const Switch&) const = default;
};
struct Return {
  std::optional<Expr> value;
  bool operator==(const Return&) const = default;
};
struct ExprStmt {
  Expr expr;
  bool operator==(const ExprStmt&) const = default;
};
struct Print {
  Expr value;
  bool operator==(const Print&) const = default;
};
// `;` in JavaLite, `pass` in PyLite.
struct Empty {
  bool operator==(const Empty&) const = default;
};
struct Break {
  bool operator==(const Break&) const = default;
};
// Bare `{ ... }` scope (JavaLite only).
struct BlockStmt {
  Block block;
  bool operator==(const BlockStmt&) const = default;
};

struct Stmt {
  std::variant<VarDecl, Assign, If, For, ForRange, While, Switch, Return, ExprStmt, Print,
               Empty, Break, BlockStmt>
      node;
  Span span;

  // Structural: spans are ignored.
  bool operator==(const Stmt& other) const { return node == other.node; }
};

struct Param {
  TypeName type = TypeName::Dynamic;
  std::string name;
  bool operator==(const Param&) const = default;
};

struct Function {
  TypeName return_type = TypeName::Dynamic;
  std::string name;
  std::vector<Param> params;
  Block body;
  Span span;

  bool operator==(const Function& o) const {
    return return_type == o.return_type && name == o.name && params == o.params &&
           body == o.body;
  }
};

// The compilation unit. Globals are evaluated in order before the entry
// function runs; the entry function is the last one in the unit.
struct SyntaxTree {
  Lang lang = Lang::JavaLite;
  std::vector<Stmt> globals;
  std::vector<Function> functions;

  bool operator==(const SyntaxTree&) const = default;

  const Function* entry() const { return functions.empty() ? nullptr : &functions.back(); }
};

// Convenience constructors used by the rewriters and tests.
Expr make_ident(std::string name);
Expr make_int(std::int64_t value);
Expr make_bool(bool value);
Expr make_str(std::string value);
Expr make_unary(UnaryOp op, Expr operand);
Expr make_binary(BinaryOp op, Expr lhs, Expr rhs);
Expr make_paren(Expr inner);
Stmt make_stmt(decltype(Stmt::node) node);

}  // namespace gencode::ir
