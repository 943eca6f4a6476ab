#pragma once

#include <type_traits>
#include <vector>

#include "gencode/ir/ast.hpp"

// Generic pre-order traversals. Each works on const and mutable trees alike.
namespace gencode::ir {

template <class E, class F>
void walk_expr(E& e, F&& f) {
  f(e);
  std::visit(
      [&](auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Unary>) {
          walk_expr(*n.operand, f);
        } else if constexpr (std::is_same_v<T, Binary>) {
          walk_expr(*n.lhs, f);
          walk_expr(*n.rhs, f);
        } else if constexpr (std::is_same_v<T, Call>) {
          for (auto& a : n.args) walk_expr(*a, f);
        } else if constexpr (std::is_same_v<T, Paren>) {
          walk_expr(*n.inner, f);
        }
      },
      e.node);
}

// Calls f(stmt) for every statement, nested ones included.
template <class S, class F>
void walk_stmt(S& s, F&& f) {
  f(s);
  std::visit(
      [&](auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, If>) {
          for (auto& c : n.then_block.stmts) walk_stmt(c, f);
          if (n.else_block) {
            for (auto& c : n.else_block->stmts) walk_stmt(c, f);
          }
        } else if constexpr (std::is_same_v<T, For>) {
          walk_stmt(*n.init, f);
          walk_stmt(*n.update, f);
          for (auto& c : n.body.stmts) walk_stmt(c, f);
        } else if constexpr (std::is_same_v<T, ForRange> || std::is_same_v<T, While>) {
          for (auto& c : n.body.stmts) walk_stmt(c, f);
        } else if constexpr (std::is_same_v<T, Switch>) {
          for (auto& sc : n.cases) {
            for (auto& c : sc.body) walk_stmt(c, f);
          }
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          for (auto& c : n.block.stmts) walk_stmt(c, f);
        }
      },
      s.node);
}

// Calls f(expr) for the expressions owned directly by one statement (not by
// its nested statements).
template <class S, class F>
void own_exprs(S& s, F&& f) {
  std::visit(
      [&](auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarDecl>) {
          if (n.init) f(*n.init);
        } else if constexpr (std::is_same_v<T, Assign>) {
          f(n.value);
        } else if constexpr (std::is_same_v<T, If> || std::is_same_v<T, For> ||
                             std::is_same_v<T, While>) {
          f(n.cond);
        } else if constexpr (std::is_same_v<T, ForRange>) {
          f(n.start);
          f(n.stop);
        } else if constexpr (std::is_same_v<T, Switch>) {
          f(n.subject);
        } else if constexpr (std::is_same_v<T, Return>) {
          if (n.value) f(*n.value);
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          f(n.expr);
        } else if constexpr (std::is_same_v<T, Print>) {
          f(n.value);
        }
      },
      s.node);
}

// Every expression node below every statement in the list.
template <class V, class F>
void walk_all_exprs(V& stmts, F&& f) {
  for (auto& top : stmts) {
    walk_stmt(top, [&](auto& s) { own_exprs(s, [&](auto& e) { walk_expr(e, f); }); });
  }
}

template <class V, class F>
void walk_blocks(V& stmts, F&& f);

// Blocks strictly inside the statements of `stmts`.
template <class V, class F>
void walk_nested_blocks(V& stmts, F&& f) {
  for (auto& s : stmts) {
    std::visit(
        [&](auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, If>) {
            walk_blocks(n.then_block.stmts, f);
            if (n.else_block) walk_blocks(n.else_block->stmts, f);
          } else if constexpr (std::is_same_v<T, For> || std::is_same_v<T, ForRange> ||
                               std::is_same_v<T, While>) {
            walk_blocks(n.body.stmts, f);
          } else if constexpr (std::is_same_v<T, Switch>) {
            for (auto& sc : n.cases) walk_nested_blocks(sc.body, f);
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            walk_blocks(n.block.stmts, f);
          }
        },
        s.node);
  }
}

// Calls f(list) for every statement list that forms a block: the given list
// itself, if/else branches, loop bodies and bare blocks. Switch case bodies
// are not blocks, though blocks nested in them are.
template <class V, class F>
void walk_blocks(V& stmts, F&& f) {
  f(stmts);
  walk_nested_blocks(stmts, f);
}

}  // namespace gencode::ir
