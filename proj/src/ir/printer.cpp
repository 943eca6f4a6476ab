#include "gencode/ir/printer.hpp"

#include <cstdint>
#include <limits>
#include <string>

#include "gencode/ir/parser.hpp"

namespace gencode::ir {

namespace {

constexpr int kPrimary = 8;

int binary_prec(BinaryOp op, Lang lang) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return lang == Lang::JavaLite ? 3 : 4;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 5;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::FloorDiv:
    case BinaryOp::Mod: return 6;
  }
  return 0;
}

bool is_comparison(BinaryOp op) {
  return op == BinaryOp::Eq || op == BinaryOp::Ne || op == BinaryOp::Lt || op == BinaryOp::Le ||
         op == BinaryOp::Gt || op == BinaryOp::Ge;
}

int unary_prec(UnaryOp op, Lang lang) {
  return (op == UnaryOp::Not && lang == Lang::PyLite) ? 3 : 7;
}

int expr_prec(const Expr& e, Lang lang) {
  if (const auto* b = std::get_if<Binary>(&e.node)) return binary_prec(b->op, lang);
  if (const auto* u = std::get_if<Unary>(&e.node)) return unary_prec(u->op, lang);
  return kPrimary;
}

std::string_view binary_text(BinaryOp op, Lang lang) {
  const bool java = lang == Lang::JavaLite;
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::FloorDiv: return "//";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return java ? "&&" : "and";
    case BinaryOp::Or: return java ? "||" : "or";
  }
  return "?";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string int_text(std::int64_t v) {
  if (v == std::numeric_limits<std::int64_t>::min()) return "9223372036854775808";
  return std::to_string(v);
}

std::string type_text(TypeName t) {
  switch (t) {
    case TypeName::Int: return "int";
    case TypeName::Boolean: return "boolean";
    case TypeName::String: return "String";
    case TypeName::Void: return "void";
    case TypeName::Dynamic: return "";
  }
  return "";
}

class Printer {
 public:
  explicit Printer(Lang lang) : lang_(lang) {}

  std::string expr(const Expr& e, int needed = 0) const {
    std::string text = expr_raw(e);
    if (expr_prec(e, lang_) < needed) return "(" + text + ")";
    return text;
  }

  std::string unit(const SyntaxTree& tree) {
    for (const Stmt& g : tree.globals) stmt(g, 0);
    for (std::size_t i = 0; i < tree.functions.size(); ++i) {
      if (i > 0 || !tree.globals.empty()) out_ += "\n";
      function(tree.functions[i]);
    }
    return std::move(out_);
  }

 private:
  Lang lang_;
  std::string out_;

  bool java() const { return lang_ == Lang::JavaLite; }

  std::string expr_raw(const Expr& e) const {
    return std::visit(
        [&](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Ident>) {
            return n.name;
          } else if constexpr (std::is_same_v<T, IntLit>) {
            return int_text(n.value);
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            if (java()) return n.value ? "true" : "false";
            return n.value ? "True" : "False";
          } else if constexpr (std::is_same_v<T, StrLit>) {
            return quote(n.value);
          } else if constexpr (std::is_same_v<T, Unary>) {
            const int p = unary_prec(n.op, lang_);
            std::string prefix;
            if (n.op == UnaryOp::Neg) {
              prefix = "-";
            } else {
              prefix = java() ? "!" : "not ";
            }
            return prefix + expr(*n.operand, p);
          } else if constexpr (std::is_same_v<T, Binary>) {
            const int p = binary_prec(n.op, lang_);
            // Left-associative, except PyLite comparisons which do not chain.
            const int left_needed = (!java() && is_comparison(n.op)) ? p + 1 : p;
            return expr(*n.lhs, left_needed) + " " + std::string(binary_text(n.op, lang_)) + " " +
                   expr(*n.rhs, p + 1);
          } else if constexpr (std::is_same_v<T, Call>) {
            std::string s = n.callee + "(";
            for (std::size_t i = 0; i < n.args.size(); ++i) {
              if (i > 0) s += ", ";
              s += expr(*n.args[i]);
            }
            return s + ")";
          } else {
            return "(" + expr(*n.inner) + ")";
          }
        },
        e.node);
  }

  void line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 4, ' ');
    out_ += text;
    out_ += "\n";
  }

  void function(const Function& fn) {
    std::string head;
    if (java()) {
      head = type_text(fn.return_type) + " " + fn.name + "(";
      for (std::size_t i = 0; i < fn.params.size(); ++i) {
        if (i > 0) head += ", ";
        head += type_text(fn.params[i].type) + " " + fn.params[i].name;
      }
      head += ")";
    } else {
      head = "def " + fn.name + "(";
      for (std::size_t i = 0; i < fn.params.size(); ++i) {
        if (i > 0) head += ", ";
        head += fn.params[i].name;
      }
      head += ")";
    }
    block(head, fn.body, 0);
  }

  // Emits `head {` ... `}` (JavaLite) or `head:` + suite (PyLite).
  void block(const std::string& head, const Block& b, int depth) {
    if (java()) {
      line(depth, head + " {");
      for (const Stmt& s : b.stmts) stmt(s, depth + 1);
      line(depth, "}");
      return;
    }
    line(depth, head + ":");
    if (b.stmts.empty()) {
      line(depth + 1, "pass");
      return;
    }
    for (const Stmt& s : b.stmts) stmt(s, depth + 1);
  }

  std::string simple(const Stmt& s) const {
    if (const auto* d = std::get_if<VarDecl>(&s.node)) {
      std::string t = type_text(d->type) + " " + d->name;
      if (d->init) t += " = " + expr(*d->init);
      return t;
    }
    if (const auto* a = std::get_if<Assign>(&s.node)) {
      return a->target + " = " + expr(a->value);
    }
    return "?";
  }

  const If* else_if(const If& node) const {
    if (!node.else_block || node.else_block->stmts.size() != 1) return nullptr;
    return std::get_if<If>(&node.else_block->stmts.front().node);
  }

  void if_chain(const If& node, int depth) {
    if (java()) {
      line(depth, "if (" + expr(node.cond) + ") {");
      const If* cur = &node;
      for (;;) {
        for (const Stmt& s : cur->then_block.stmts) stmt(s, depth + 1);
        if (const If* next = else_if(*cur)) {
          line(depth, "} else if (" + expr(next->cond) + ") {");
          cur = next;
          continue;
        }
        if (cur->else_block) {
          line(depth, "} else {");
          for (const Stmt& s : cur->else_block->stmts) stmt(s, depth + 1);
        }
        line(depth, "}");
        return;
      }
    }
    block("if " + expr(node.cond), node.then_block, depth);
    const If* cur = &node;
    while (const If* next = else_if(*cur)) {
      block("elif " + expr(next->cond), next->then_block, depth);
      cur = next;
    }
    if (cur->else_block) block("else", *cur->else_block, depth);
  }

  void stmt(const Stmt& s, int depth) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          const std::string semi = java() ? ";" : "";
          if constexpr (std::is_same_v<T, VarDecl> || std::is_same_v<T, Assign>) {
            line(depth, simple(s) + semi);
          } else if constexpr (std::is_same_v<T, If>) {
            if_chain(n, depth);
          } else if constexpr (std::is_same_v<T, For>) {
            block("for (" + simple(*n.init) + "; " + expr(n.cond) + "; " + simple(*n.update) + ")",
                  n.body, depth);
          } else if constexpr (std::is_same_v<T, ForRange>) {
            std::string range = "range(";
            const auto* lit = std::get_if<IntLit>(&n.start.node);
            if (lit == nullptr || lit->value != 0) range += expr(n.start) + ", ";
            range += expr(n.stop) + ")";
            block("for " + n.var + " in " + range, n.body, depth);
          } else if constexpr (std::is_same_v<T, While>) {
            block(java() ? "while (" + expr(n.cond) + ")" : "while " + expr(n.cond), n.body,
                  depth);
          } else if constexpr (std::is_same_v<T, Switch>) {
            line(depth, "switch (" + expr(n.subject) + ") {");
            for (const SwitchCase& c : n.cases) {
              line(depth + 1, c.label ? "case " + std::to_string(*c.label) + ":" : "default:");
              for (const Stmt& inner : c.body) stmt(inner, depth + 2);
            }
            line(depth, "}");
          } else if constexpr (std::is_same_v<T, Return>) {
            line(depth, n.value ? "return " + expr(*n.value) + semi : "return" + semi);
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            line(depth, expr(n.expr) + semi);
          } else if constexpr (std::is_same_v<T, Print>) {
            line(depth, java() ? "System.out.println(" + expr(n.value) + ");"
                               : "print(" + expr(n.value) + ")");
          } else if constexpr (std::is_same_v<T, Empty>) {
            line(depth, java() ? ";" : "pass");
          } else if constexpr (std::is_same_v<T, Break>) {
            line(depth, "break" + semi);
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            line(depth, "{");
            for (const Stmt& inner : n.block.stmts) stmt(inner, depth + 1);
            line(depth, "}");
          }
        },
        s.node);
  }
};

}  // namespace

std::string print(const SyntaxTree& tree) { return Printer(tree.lang).unit(tree); }

std::string print_expr(const Expr& expr, Lang lang) { return Printer(lang).expr(expr); }

SyntaxTree canonicalize(const SyntaxTree& tree) { return parse_source(print(tree), tree.lang); }

}  // namespace gencode::ir
