#include "gencode/refactor/refactor.hpp"

#include <map>
#include <set>

#include "gencode/common/rng.hpp"
#include "gencode/ir/interpreter.hpp"
#include "gencode/ir/printer.hpp"
#include "gencode/ir/scope.hpp"
#include "gencode/ir/walk.hpp"
#include "sites.hpp"

namespace gencode::refactor {

using namespace ir;
using detail::Slot;

namespace {

struct KindName {
  RefactorKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 18> kNames = {{
    {RefactorKind::ApiRenaming, "api_renaming"},
    {RefactorKind::ArgumentsAdding, "arguments_adding"},
    {RefactorKind::ArgumentsRenaming, "arguments_renaming"},
    {RefactorKind::DeadForAdding, "dead_for_adding"},
    {RefactorKind::DeadIfAdding, "dead_if_adding"},
    {RefactorKind::DeadIfElseAdding, "dead_if_else_adding"},
    {RefactorKind::DeadSwitchAdding, "dead_switch_adding"},
    {RefactorKind::DeadWhileAdding, "dead_while_adding"},
    {RefactorKind::Duplication, "duplication"},
    {RefactorKind::FieldEnhancement, "field_enhancement"},
    {RefactorKind::ForLoopEnhancement, "for_loop_enhancement"},
    {RefactorKind::IfEnhancement, "if_enhancement"},
    {RefactorKind::LocalVariableAdding, "local_variable_adding"},
    {RefactorKind::LocalVariableRenaming, "local_variable_renaming"},
    {RefactorKind::MethodNameRenaming, "method_name_renaming"},
    {RefactorKind::PlusZero, "plus_zero"},
    {RefactorKind::PrintAdding, "print_adding"},
    {RefactorKind::ReturnOptimal, "return_optimal"},
}};

using Note = std::optional<std::string>;

template <class T>
T& pick(std::vector<T>& items, Rng& rng) {
  return items[rng.index(items.size())];
}

Block empty_block() {
  Block b;
  b.stmts.push_back(make_stmt(Empty{}));
  return b;
}

Stmt dead_statement(RefactorKind kind, Lang lang, const std::set<std::string>& taken) {
  switch (kind) {
    case RefactorKind::DeadIfAdding:
      return make_stmt(If{make_bool(false), empty_block(), std::nullopt});
    case RefactorKind::DeadIfElseAdding:
      return make_stmt(If{make_bool(true), empty_block(), empty_block()});
    case RefactorKind::DeadWhileAdding:
      return make_stmt(While{make_bool(false), empty_block()});
    case RefactorKind::DeadSwitchAdding: {
      Switch sw{make_int(0), {}};
      sw.cases.push_back(SwitchCase{std::nullopt, {make_stmt(Empty{})}});
      return make_stmt(std::move(sw));
    }
    default: {
      const std::string i = fresh_name(taken, "i");
      if (lang == Lang::PyLite) {
        return make_stmt(ForRange{i, make_int(0), make_int(0), empty_block()});
      }
      For loop;
      loop.init = make_stmt(VarDecl{TypeName::Int, i, make_int(0)});
      loop.cond = make_binary(BinaryOp::Lt, make_ident(i), make_int(0));
      loop.update = make_stmt(Assign{i, make_binary(BinaryOp::Add, make_ident(i), make_int(1))});
      loop.body = empty_block();
      return make_stmt(std::move(loop));
    }
  }
}

Note insert_at_slot(SyntaxTree& tree, Rng& rng, Stmt stmt, const std::string& what) {
  std::vector<Slot> slots = detail::statement_slots(tree);
  if (slots.empty()) return std::nullopt;
  Slot& slot = pick(slots, rng);
  slot.block->insert(slot.block->begin() + static_cast<std::ptrdiff_t>(slot.pos), std::move(stmt));
  return "inserted " + what + " at statement slot " + std::to_string(slot.pos);
}

std::vector<Function*> non_entry_functions(SyntaxTree& tree) {
  std::vector<Function*> out;
  for (std::size_t i = 0; i + 1 < tree.functions.size(); ++i) out.push_back(&tree.functions[i]);
  return out;
}

bool has_global(const SyntaxTree& tree, const std::string& name) {
  for (const Stmt& g : tree.globals) {
    if (const auto* d = std::get_if<VarDecl>(&g.node); d && d->name == name) return true;
    if (const auto* a = std::get_if<Assign>(&g.node); a && a->target == name) return true;
  }
  return false;
}

bool mentions(const Expr& root, const std::string& name, bool& has_call) {
  bool found = false;
  walk_expr(root, [&](const Expr& e) {
    if (const auto* id = std::get_if<Ident>(&e.node); id && id->name == name) found = true;
    if (std::holds_alternative<Call>(e.node)) has_call = true;
  });
  return found;
}

// ----------------------------------------------------------------- renaming

Note api_renaming(SyntaxTree& tree, Rng&, const std::set<std::string>& taken) {
  if (tree.functions.empty()) return std::nullopt;
  const std::string from = tree.functions.back().name;
  const std::string to = fresh_name(taken, "fn");
  detail::rename_function(tree, from, to);
  return "renamed entry function " + from + " to " + to;
}

Note method_name_renaming(SyntaxTree& tree, Rng& rng, const std::set<std::string>& taken) {
  auto fns = non_entry_functions(tree);
  if (fns.empty()) return std::nullopt;
  const std::string from = pick(fns, rng)->name;
  const std::string to = fresh_name(taken, "fn");
  detail::rename_function(tree, from, to);
  return "renamed function " + from + " to " + to;
}

Note arguments_adding(SyntaxTree& tree, Rng& rng, const std::set<std::string>& taken) {
  auto fns = non_entry_functions(tree);
  if (fns.empty()) return std::nullopt;
  Function& fn = *pick(fns, rng);
  const std::string param = fresh_name(taken, "unused");
  fn.params.push_back(
      Param{tree.lang == Lang::JavaLite ? TypeName::Int : TypeName::Dynamic, param});
  auto extend_calls = [&](std::vector<Stmt>& stmts) {
    walk_all_exprs(stmts, [&](Expr& e) {
      if (auto* c = std::get_if<Call>(&e.node); c && c->callee == fn.name) {
        c->args.emplace_back(make_int(0));
      }
    });
  };
  extend_calls(tree.globals);
  for (Function& f : tree.functions) extend_calls(f.body.stmts);
  return "added parameter " + param + " to " + fn.name;
}

Note arguments_renaming(SyntaxTree& tree, Rng& rng, const std::set<std::string>& taken) {
  std::vector<std::pair<Function*, std::string>> sites;
  for (Function& fn : tree.functions) {
    for (const Param& p : fn.params) {
      // A JavaLite local redeclaring the name would make occurrences ambiguous.
      if (tree.lang == Lang::JavaLite && detail::declares(fn.body.stmts, p.name)) continue;
      sites.emplace_back(&fn, p.name);
    }
  }
  if (sites.empty()) return std::nullopt;
  auto& [fn, from] = pick(sites, rng);
  const std::string to = fresh_name(taken, "arg");
  detail::rename_variable(*fn, from, to);
  return "renamed parameter " + from + " of " + fn->name + " to " + to;
}

Note local_variable_renaming(SyntaxTree& tree, Rng& rng, const std::set<std::string>& taken) {
  std::vector<std::pair<Function*, std::string>> sites;
  for (Function& fn : tree.functions) {
    std::set<std::string> params;
    for (const Param& p : fn.params) params.insert(p.name);
    std::map<std::string, int> decls;
    for (const Stmt& top : fn.body.stmts) {
      walk_stmt(top, [&](const Stmt& s) {
        if (tree.lang == Lang::JavaLite) {
          if (const auto* d = std::get_if<VarDecl>(&s.node)) ++decls[d->name];
        } else {
          if (const auto* a = std::get_if<Assign>(&s.node)) ++decls[a->target];
          if (const auto* f = std::get_if<ForRange>(&s.node)) ++decls[f->var];
        }
      });
    }
    for (const auto& [name, count] : decls) {
      if (params.count(name) != 0) continue;
      if (tree.lang == Lang::JavaLite && (count != 1 || has_global(tree, name))) continue;
      sites.emplace_back(&fn, name);
    }
  }
  if (sites.empty()) return std::nullopt;
  auto& [fn, from] = pick(sites, rng);
  const std::string to = fresh_name(taken, "var");
  detail::rename_variable(*fn, from, to);
  return "renamed local " + from + " in " + fn->name + " to " + to;
}

// ------------------------------------------------------------------ adding

Note field_enhancement(SyntaxTree& tree, Rng& rng, const std::set<std::string>& taken) {
  const std::string name = fresh_name(taken, "unused");
  Stmt decl = tree.lang == Lang::JavaLite
                  ? make_stmt(VarDecl{TypeName::Int, name, make_int(0)})
                  : make_stmt(Assign{name, make_int(0)});
  const std::size_t pos = rng.index(tree.globals.size() + 1);
  tree.globals.insert(tree.globals.begin() + static_cast<std::ptrdiff_t>(pos), std::move(decl));
  return "added global " + name;
}

Note local_variable_adding(SyntaxTree& tree, Rng& rng, const std::set<std::string>& taken) {
  if (tree.functions.empty()) return std::nullopt;
  Function& fn = tree.functions[rng.index(tree.functions.size())];
  const std::string name = fresh_name(taken, "unused");
  Stmt decl = tree.lang == Lang::JavaLite
                  ? make_stmt(VarDecl{TypeName::Int, name, make_int(0)})
                  : make_stmt(Assign{name, make_int(0)});
  fn.body.stmts.insert(fn.body.stmts.begin(), std::move(decl));
  return "added local " + name + " to " + fn.name;
}

Note print_adding(SyntaxTree& tree, Rng& rng, const std::set<std::string>&) {
  // Programs that already print compare stdout in their io_pairs.
  if (prints_output(tree)) return std::nullopt;
  return insert_at_slot(tree, rng, make_stmt(Print{make_str("log")}), "print");
}

Note duplication(SyntaxTree& tree, Rng& rng, const std::set<std::string>&) {
  struct Site {
    std::vector<Stmt>* block;
    std::size_t pos;
    std::string target;
    const Expr* value;
  };
  std::vector<Site> sites;
  for (std::vector<Stmt>* block : detail::function_blocks(tree)) {
    for (std::size_t i = 0; i < block->size(); ++i) {
      const auto& node = (*block)[i].node;
      std::string target;
      const Expr* value = nullptr;
      if (const auto* a = std::get_if<Assign>(&node)) {
        target = a->target;
        value = &a->value;
      } else if (const auto* d = std::get_if<VarDecl>(&node); d && d->init) {
        target = d->name;
        value = &*d->init;
      } else {
        continue;
      }
      bool has_call = false;
      if (mentions(*value, target, has_call) || has_call) continue;
      sites.push_back(Site{block, i, target, value});
    }
  }
  if (sites.empty()) return std::nullopt;
  const Site site = pick(sites, rng);
  Stmt copy = make_stmt(Assign{site.target, *site.value});
  site.block->insert(site.block->begin() + static_cast<std::ptrdiff_t>(site.pos + 1),
                     std::move(copy));
  return "duplicated assignment to " + site.target;
}

// ---------------------------------------------------------------- rewriting

Note for_loop_enhancement(SyntaxTree& tree, Rng& rng, const std::set<std::string>& taken) {
  if (tree.lang == Lang::JavaLite) {
    std::vector<Stmt*> sites;
    for (Function& fn : tree.functions) {
      for (Stmt& top : fn.body.stmts) {
        walk_stmt(top, [&](Stmt& s) {
          if (std::holds_alternative<For>(s.node)) sites.push_back(&s);
        });
      }
    }
    if (sites.empty()) return std::nullopt;
    Stmt& site = *pick(sites, rng);
    For loop = std::get<For>(std::move(site.node));
    bool body_declares = false;
    for (const Stmt& s : loop.body.stmts) {
      if (std::holds_alternative<VarDecl>(s.node)) body_declares = true;
    }
    While w{std::move(loop.cond), {}};
    if (body_declares) {
      w.body.stmts.push_back(make_stmt(BlockStmt{std::move(loop.body)}));
    } else {
      w.body.stmts = std::move(loop.body.stmts);
    }
    w.body.stmts.push_back(std::move(*loop.update));
    BlockStmt outer;
    outer.block.stmts.push_back(std::move(*loop.init));
    outer.block.stmts.push_back(make_stmt(std::move(w)));
    site.node = std::move(outer);
    return std::string("rewrote for loop as while");
  }
  std::vector<std::pair<std::vector<Stmt>*, std::size_t>> sites;
  for (std::vector<Stmt>* block : detail::function_blocks(tree)) {
    for (std::size_t i = 0; i < block->size(); ++i) {
      if (std::holds_alternative<ForRange>((*block)[i].node)) sites.emplace_back(block, i);
    }
  }
  if (sites.empty()) return std::nullopt;
  auto [block, pos] = pick(sites, rng);
  ForRange loop = std::get<ForRange>(std::move((*block)[pos].node));
  std::set<std::string> names = taken;
  const std::string it = fresh_name(names, "it");
  names.insert(it);
  const std::string stop = fresh_name(names, "stop");
  While w{make_binary(BinaryOp::Lt, make_ident(it), make_ident(stop)), {}};
  w.body.stmts.push_back(make_stmt(Assign{loop.var, make_ident(it)}));
  for (Stmt& s : loop.body.stmts) w.body.stmts.push_back(std::move(s));
  w.body.stmts.push_back(
      make_stmt(Assign{it, make_binary(BinaryOp::Add, make_ident(it), make_int(1))}));
  std::vector<Stmt> replacement;
  replacement.push_back(make_stmt(Assign{it, std::move(loop.start)}));
  replacement.push_back(make_stmt(Assign{stop, std::move(loop.stop)}));
  replacement.push_back(make_stmt(std::move(w)));
  block->erase(block->begin() + static_cast<std::ptrdiff_t>(pos));
  block->insert(block->begin() + static_cast<std::ptrdiff_t>(pos),
                std::make_move_iterator(replacement.begin()),
                std::make_move_iterator(replacement.end()));
  return "rewrote for-range loop over " + loop.var + " as while";
}

Note if_enhancement(SyntaxTree& tree, Rng& rng, const std::set<std::string>&) {
  std::vector<If*> sites;
  for (Function& fn : tree.functions) {
    for (Stmt& top : fn.body.stmts) {
      walk_stmt(top, [&](Stmt& s) {
        if (auto* i = std::get_if<If>(&s.node)) sites.push_back(i);
      });
    }
  }
  if (sites.empty()) return std::nullopt;
  If& site = *pick(sites, rng);
  Expr inner = make_unary(UnaryOp::Not, make_paren(std::move(site.cond)));
  site.cond = make_unary(UnaryOp::Not, make_paren(std::move(inner)));
  return std::string("double-negated an if condition");
}

Note plus_zero(SyntaxTree& tree, Rng& rng, const std::set<std::string>&) {
  std::vector<Expr*> sites = detail::int_valued_sites(tree);
  if (sites.empty()) return std::nullopt;
  Expr& site = *pick(sites, rng);
  Expr old = std::move(site);
  site = make_binary(BinaryOp::Add, std::move(old), make_int(0));
  return "added + 0 to " + print_expr(site, tree.lang);
}

Note return_optimal(SyntaxTree& tree, Rng& rng, const std::set<std::string>&) {
  struct Site {
    std::vector<Stmt>* block;
    std::size_t pos;
  };
  std::vector<Site> sites;
  for (Function& fn : tree.functions) {
    walk_blocks(fn.body.stmts, [&](std::vector<Stmt>& block) {
      for (std::size_t i = 0; i + 1 < block.size(); ++i) {
        const auto* ret = std::get_if<Return>(&block[i + 1].node);
        if (ret == nullptr || !ret->value) continue;
        const auto* id = std::get_if<Ident>(&ret->value->node);
        if (id == nullptr) continue;
        const auto& node = block[i].node;
        const auto* a = std::get_if<Assign>(&node);
        const auto* d = std::get_if<VarDecl>(&node);
        const bool matches = (a != nullptr && a->target == id->name) ||
                             (d != nullptr && d->init && d->name == id->name);
        if (!matches) continue;
        if (tree.lang == Lang::JavaLite) {
          // The assigned variable must be local so dropping the store is unobservable.
          bool param = false;
          for (const Param& p : fn.params) param = param || p.name == id->name;
          if (!param && !detail::declares(fn.body.stmts, id->name)) continue;
          if (has_global(tree, id->name)) continue;
        }
        sites.push_back(Site{&block, i});
      }
    });
  }
  if (sites.empty()) return std::nullopt;
  const Site site = pick(sites, rng);
  auto& node = (*site.block)[site.pos].node;
  Expr value = std::holds_alternative<Assign>(node) ? std::move(std::get<Assign>(node).value)
                                                    : std::move(*std::get<VarDecl>(node).init);
  (*site.block)[site.pos + 1] = make_stmt(Return{std::move(value)});
  site.block->erase(site.block->begin() + static_cast<std::ptrdiff_t>(site.pos));
  return std::string("returned the expression directly");
}

Note rewrite(RefactorKind kind, SyntaxTree& tree, Rng& rng) {
  const std::set<std::string> taken = identifiers(tree);
  switch (kind) {
    case RefactorKind::ApiRenaming: return api_renaming(tree, rng, taken);
    case RefactorKind::MethodNameRenaming: return method_name_renaming(tree, rng, taken);
    case RefactorKind::ArgumentsAdding: return arguments_adding(tree, rng, taken);
    case RefactorKind::ArgumentsRenaming: return arguments_renaming(tree, rng, taken);
    case RefactorKind::LocalVariableRenaming: return local_variable_renaming(tree, rng, taken);
    case RefactorKind::DeadForAdding:
    case RefactorKind::DeadIfAdding:
    case RefactorKind::DeadIfElseAdding:
    case RefactorKind::DeadSwitchAdding:
    case RefactorKind::DeadWhileAdding:
      return insert_at_slot(tree, rng, dead_statement(kind, tree.lang, taken),
                            std::string(refactor_kind_name(kind)));
    case RefactorKind::Duplication: return duplication(tree, rng, taken);
    case RefactorKind::FieldEnhancement: return field_enhancement(tree, rng, taken);
    case RefactorKind::LocalVariableAdding: return local_variable_adding(tree, rng, taken);
    case RefactorKind::ForLoopEnhancement: return for_loop_enhancement(tree, rng, taken);
    case RefactorKind::IfEnhancement: return if_enhancement(tree, rng, taken);
    case RefactorKind::PlusZero: return plus_zero(tree, rng, taken);
    case RefactorKind::PrintAdding: return print_adding(tree, rng, taken);
    case RefactorKind::ReturnOptimal: return return_optimal(tree, rng, taken);
  }
  return std::nullopt;
}

}  // namespace

std::string_view refactor_kind_name(RefactorKind kind) {
  for (const auto& entry : kNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "?";
}

std::optional<RefactorKind> parse_refactor_kind(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

RewriteOutcome apply_refactor(RefactorKind kind, const SyntaxTree& tree, std::uint64_t seed) {
  RewriteOutcome out;
  if (kind == RefactorKind::DeadSwitchAdding && tree.lang == Lang::PyLite) {
    out.status = RewriteStatus::UnsupportedSyntax;
    out.tree = tree;
    out.note = "switch is not part of the python subset";
    return out;
  }
  SyntaxTree work = tree;
  Rng rng(seed);
  Note note = rewrite(kind, work, rng);
  if (!note) {
    out.status = RewriteStatus::NotApplicable;
    out.tree = tree;
    out.note = "no eligible site";
    return out;
  }
  out.status = RewriteStatus::Applied;
  out.tree = canonicalize(work);
  out.note = std::move(*note);
  return out;
}

std::vector<RefactorKind> eligible_kinds(const SyntaxTree& tree) {
  std::vector<RefactorKind> out;
  for (RefactorKind kind : kAllRefactorKinds) {
    // Applicability never depends on the seed, only the chosen site does.
    if (apply_refactor(kind, tree, 0).status == RewriteStatus::Applied) out.push_back(kind);
  }
  return out;
}

}  // namespace gencode::refactor
