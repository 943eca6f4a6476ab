#include "sites.hpp"

#include <map>
#include <optional>

#include "gencode/ir/walk.hpp"

namespace gencode::refactor::detail {

using namespace ir;

std::vector<std::vector<Stmt>*> function_blocks(SyntaxTree& tree) {
  std::vector<std::vector<Stmt>*> out;
  for (Function& fn : tree.functions) {
    walk_blocks(fn.body.stmts, [&](std::vector<Stmt>& b) { out.push_back(&b); });
  }
  return out;
}

std::vector<Slot> statement_slots(SyntaxTree& tree) {
  std::vector<Slot> out;
  for (std::vector<Stmt>* block : function_blocks(tree)) {
    for (std::size_t pos = 0; pos <= block->size(); ++pos) {
      out.push_back(Slot{block, pos});
      if (pos < block->size()) {
        const auto& node = (*block)[pos].node;
        if (std::holds_alternative<Return>(node) || std::holds_alternative<Break>(node)) break;
      }
    }
  }
  return out;
}

namespace {

// Declared types of the names visible in one JavaLite function. A name whose
// declarations disagree maps to nullopt.
using TypeEnv = std::map<std::string, std::optional<TypeName>>;

void bind(TypeEnv& env, const std::string& name, TypeName type) {
  auto it = env.find(name);
  if (it == env.end()) {
    env.emplace(name, type);
  } else if (it->second != type) {
    it->second = std::nullopt;
  }
}

class IntTyper {
 public:
  IntTyper(const SyntaxTree& tree, const TypeEnv& env) : tree_(tree), env_(env) {}

  bool int_valued(const Expr& e) const {
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return true;
          } else if constexpr (std::is_same_v<T, Paren>) {
            return int_valued(*n.inner);
          } else if constexpr (std::is_same_v<T, Unary>) {
            return n.op == UnaryOp::Neg;
          } else if constexpr (std::is_same_v<T, Binary>) {
            switch (n.op) {
              case BinaryOp::Sub:
              case BinaryOp::Mul:
              case BinaryOp::Div:
              case BinaryOp::FloorDiv:
              case BinaryOp::Mod:
                return true;
              case BinaryOp::Add:
                // int + text concatenates in JavaLite; PyLite faults instead.
                if (java()) return int_valued(*n.lhs) && int_valued(*n.rhs);
                return int_valued(*n.lhs) || int_valued(*n.rhs);
              default:
                return false;
            }
          } else if constexpr (std::is_same_v<T, Ident>) {
            if (!java()) return false;
            auto it = env_.find(n.name);
            return it != env_.end() && it->second == TypeName::Int;
          } else if constexpr (std::is_same_v<T, Call>) {
            if (!java()) return false;
            for (const Function& fn : tree_.functions) {
              if (fn.name == n.callee) return fn.return_type == TypeName::Int;
            }
            return false;
          } else {
            return false;
          }
        },
        e.node);
  }

 private:
  const SyntaxTree& tree_;
  const TypeEnv& env_;
  bool java() const { return tree_.lang == Lang::JavaLite; }
};

}  // namespace

std::vector<Expr*> int_valued_sites(SyntaxTree& tree) {
  TypeEnv globals;
  for (const Stmt& g : tree.globals) {
    if (const auto* d = std::get_if<VarDecl>(&g.node)) bind(globals, d->name, d->type);
  }
  std::vector<Expr*> out;
  for (Function& fn : tree.functions) {
    TypeEnv env = globals;
    for (const Param& p : fn.params) bind(env, p.name, p.type);
    for (const Stmt& top : fn.body.stmts) {
      walk_stmt(top, [&](const Stmt& s) {
        if (const auto* d = std::get_if<VarDecl>(&s.node)) bind(env, d->name, d->type);
      });
    }
    const IntTyper typer(tree, env);
    walk_all_exprs(fn.body.stmts, [&](Expr& e) {
      if (!std::holds_alternative<Paren>(e.node) && typer.int_valued(e)) out.push_back(&e);
    });
  }
  return out;
}

void rename_variable(Function& fn, const std::string& from, const std::string& to) {
  for (Param& p : fn.params) {
    if (p.name == from) p.name = to;
  }
  for (Stmt& top : fn.body.stmts) {
    walk_stmt(top, [&](Stmt& s) {
      if (auto* d = std::get_if<VarDecl>(&s.node); d && d->name == from) d->name = to;
      if (auto* a = std::get_if<Assign>(&s.node); a && a->target == from) a->target = to;
      if (auto* f = std::get_if<ForRange>(&s.node); f && f->var == from) f->var = to;
      own_exprs(s, [&](Expr& root) {
        walk_expr(root, [&](Expr& e) {
          if (auto* id = std::get_if<Ident>(&e.node); id && id->name == from) id->name = to;
        });
      });
    });
  }
}

void rename_function(SyntaxTree& tree, const std::string& from, const std::string& to) {
  auto rename_calls = [&](std::vector<Stmt>& stmts) {
    walk_all_exprs(stmts, [&](Expr& e) {
      if (auto* c = std::get_if<Call>(&e.node); c && c->callee == from) c->callee = to;
    });
  };
  rename_calls(tree.globals);
  for (Function& fn : tree.functions) {
    if (fn.name == from) fn.name = to;
    rename_calls(fn.body.stmts);
  }
}

bool declares(const std::vector<Stmt>& stmts, const std::string& name) {
  bool found = false;
  for (const Stmt& top : stmts) {
    walk_stmt(top, [&](const Stmt& s) {
      if (const auto* d = std::get_if<VarDecl>(&s.node); d && d->name == name) found = true;
    });
  }
  return found;
}

}  // namespace gencode::refactor::detail
