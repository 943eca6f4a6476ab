#include "gencode/ir/scope.hpp"

#include <map>

#include "gencode/ir/walk.hpp"

namespace gencode::ir {

namespace {

void add_expr_names(const Expr& e, std::set<std::string>& out) {
  walk_expr(e, [&](const Expr& x) {
    if (const auto* id = std::get_if<Ident>(&x.node)) out.insert(id->name);
    if (const auto* call = std::get_if<Call>(&x.node)) out.insert(call->callee);
  });
}

void add_stmt_names(const std::vector<Stmt>& stmts, std::set<std::string>& out) {
  for (const Stmt& top : stmts) {
    walk_stmt(top, [&](const Stmt& s) {
      if (const auto* d = std::get_if<VarDecl>(&s.node)) out.insert(d->name);
      if (const auto* a = std::get_if<Assign>(&s.node)) out.insert(a->target);
      if (const auto* f = std::get_if<ForRange>(&s.node)) out.insert(f->var);
      own_exprs(s, [&](const Expr& e) { add_expr_names(e, out); });
    });
  }
}

// Scoped resolution. JavaLite uses lexical block scopes; PyLite binds
// parameters and assigned names function-wide.
class Resolver {
 public:
  explicit Resolver(const SyntaxTree& tree) : tree_(tree) {
    for (const Function& fn : tree.functions) functions_.insert(fn.name);
  }

  std::vector<std::string> run() {
    scopes_.emplace_back();
    for (const Stmt& g : tree_.globals) stmt(g);
    for (const Function& fn : tree_.functions) {
      scopes_.emplace_back();
      for (const Param& p : fn.params) scopes_.back().insert(p.name);
      if (tree_.lang == Lang::PyLite) {
        for (const Stmt& top : fn.body.stmts) {
          walk_stmt(top, [&](const Stmt& s) {
            if (const auto* a = std::get_if<Assign>(&s.node)) scopes_.back().insert(a->target);
            if (const auto* f = std::get_if<ForRange>(&s.node)) scopes_.back().insert(f->var);
          });
        }
      }
      block(fn.body.stmts);
      scopes_.pop_back();
    }
    return std::move(free_);
  }

 private:
  const SyntaxTree& tree_;
  std::set<std::string> functions_;
  std::vector<std::set<std::string>> scopes_;
  std::vector<std::string> free_;

  bool bound(const std::string& name) const {
    for (const auto& s : scopes_) {
      if (s.count(name) != 0) return true;
    }
    return false;
  }

  void use(const Expr& e) {
    walk_expr(e, [&](const Expr& x) {
      if (const auto* id = std::get_if<Ident>(&x.node)) {
        if (!bound(id->name)) free_.push_back(id->name);
      }
      if (const auto* call = std::get_if<Call>(&x.node)) {
        if (functions_.count(call->callee) == 0) free_.push_back(call->callee);
      }
    });
  }

  void block(const std::vector<Stmt>& stmts) {
    const bool java = tree_.lang == Lang::JavaLite;
    if (java) scopes_.emplace_back();
    for (const Stmt& s : stmts) stmt(s);
    if (java) scopes_.pop_back();
  }

  void stmt(const Stmt& s) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, VarDecl>) {
            if (n.init) use(*n.init);
            scopes_.back().insert(n.name);
          } else if constexpr (std::is_same_v<T, Assign>) {
            use(n.value);
            if (tree_.lang == Lang::PyLite) {
              scopes_.back().insert(n.target);
            } else if (!bound(n.target)) {
              free_.push_back(n.target);
            }
          } else if constexpr (std::is_same_v<T, If>) {
            use(n.cond);
            block(n.then_block.stmts);
            if (n.else_block) block(n.else_block->stmts);
          } else if constexpr (std::is_same_v<T, For>) {
            scopes_.emplace_back();
            stmt(*n.init);
            use(n.cond);
            block(n.body.stmts);
            stmt(*n.update);
            scopes_.pop_back();
          } else if constexpr (std::is_same_v<T, ForRange>) {
            use(n.start);
            use(n.stop);
            scopes_.back().insert(n.var);
            block(n.body.stmts);
          } else if constexpr (std::is_same_v<T, While>) {
            use(n.cond);
            block(n.body.stmts);
          } else if constexpr (std::is_same_v<T, Switch>) {
            use(n.subject);
            scopes_.emplace_back();
            for (const SwitchCase& c : n.cases) {
              for (const Stmt& inner : c.body) stmt(inner);
            }
            scopes_.pop_back();
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            block(n.block.stmts);
          } else {
            own_exprs(s, [&](const Expr& e) { use(e); });
          }
        },
        s.node);
  }
};

}  // namespace

std::set<std::string> identifiers(const SyntaxTree& tree) {
  std::set<std::string> out;
  add_stmt_names(tree.globals, out);
  for (const Function& fn : tree.functions) {
    out.insert(fn.name);
    for (const Param& p : fn.params) out.insert(p.name);
    add_stmt_names(fn.body.stmts, out);
  }
  return out;
}

std::string fresh_name(const std::set<std::string>& taken, std::string_view prefix) {
  for (std::size_t k = 0;; ++k) {
    std::string candidate = std::string(prefix) + "_" + std::to_string(k);
    if (taken.count(candidate) == 0) return candidate;
  }
}

std::string fresh_name(const SyntaxTree& tree, std::string_view prefix) {
  return fresh_name(identifiers(tree), prefix);
}

std::vector<std::string> free_names(const SyntaxTree& tree) { return Resolver(tree).run(); }

}  // namespace gencode::ir
