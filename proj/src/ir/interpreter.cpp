#include "gencode/ir/interpreter.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "gencode/ir/parser.hpp"

namespace gencode::ir {

namespace {

struct Abort {
  RuntimeFault fault;
};

[[noreturn]] void fault(FaultKind kind, std::string detail) {
  throw Abort{RuntimeFault{kind, std::move(detail)}};
}

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

// Truncating division, as in Java.
std::int64_t trunc_div(std::int64_t a, std::int64_t b) {
  if (b == 0) fault(FaultKind::DivisionByZero, "division by zero");
  if (a == kMin && b == -1) return kMin;
  return a / b;
}
std::int64_t trunc_mod(std::int64_t a, std::int64_t b) {
  if (b == 0) fault(FaultKind::DivisionByZero, "modulo by zero");
  if (b == -1) return 0;
  return a % b;
}
// Flooring division, as in Python.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = trunc_div(a, b);
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  std::int64_t r = trunc_mod(a, b);
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

const char* type_label(const Value& v) {
  if (v.is_int()) return "int";
  if (v.is_bool()) return "bool";
  if (v.is_text()) return "string";
  return "unit";
}

bool type_accepts(TypeName t, const Value& v) {
  switch (t) {
    case TypeName::Int: return v.is_int();
    case TypeName::Boolean: return v.is_bool();
    case TypeName::String: return v.is_text();
    case TypeName::Void: return v.is_unit();
    case TypeName::Dynamic: return true;
  }
  return false;
}

Value default_value(TypeName t) {
  switch (t) {
    case TypeName::Int: return Value(std::int64_t{0});
    case TypeName::Boolean: return Value(false);
    case TypeName::String: return Value(std::string());
    default: return Value();
  }
}

enum class Flow { Normal, Break, Return };

// Names a PyLite function binds locally: parameters plus every assignment or
// loop target anywhere in its body.
void collect_py_locals(const std::vector<Stmt>& stmts, std::set<std::string>& out) {
  for (const Stmt& s : stmts) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Assign>) {
            out.insert(n.target);
          } else if constexpr (std::is_same_v<T, ForRange>) {
            out.insert(n.var);
            collect_py_locals(n.body.stmts, out);
          } else if constexpr (std::is_same_v<T, If>) {
            collect_py_locals(n.then_block.stmts, out);
            if (n.else_block) collect_py_locals(n.else_block->stmts, out);
          } else if constexpr (std::is_same_v<T, While>) {
            collect_py_locals(n.body.stmts, out);
          }
        },
        s.node);
  }
}

class Interpreter {
 public:
  Interpreter(const SyntaxTree& tree, std::uint64_t fuel) : tree_(tree), fuel_(fuel) {
    for (const Function& fn : tree.functions) functions_[fn.name] = &fn;
    if (tree.lang == Lang::PyLite) {
      for (const Function& fn : tree.functions) {
        std::set<std::string> locals;
        for (const Param& p : fn.params) locals.insert(p.name);
        collect_py_locals(fn.body.stmts, locals);
        py_locals_[fn.name] = std::move(locals);
      }
    }
  }

  ExecResult run(std::span<const Value> args) {
    ExecResult result;
    try {
      const Function* entry = tree_.entry();
      if (entry == nullptr) fault(FaultKind::UnboundName, "no entry function");
      for (const Stmt& g : tree_.globals) global(g);
      result.outcome = call(*entry, std::vector<Value>(args.begin(), args.end()));
    } catch (const Abort& a) {
      result.outcome = a.fault;
    }
    result.output = std::move(out_);
    result.steps = steps_;
    return result;
  }

 private:
  struct Var {
    TypeName type = TypeName::Dynamic;
    Value value;
  };
  struct Frame {
    const Function* fn = nullptr;
    // JavaLite: nested block scopes. PyLite: a single flat scope.
    std::vector<std::map<std::string, Var>> scopes;
    const std::set<std::string>* py_locals = nullptr;
    Value ret;
  };

  const SyntaxTree& tree_;
  std::uint64_t fuel_;
  std::uint64_t steps_ = 0;
  std::string out_;
  std::map<std::string, const Function*> functions_;
  std::map<std::string, std::set<std::string>> py_locals_;
  std::map<std::string, Var> globals_;
  std::vector<Frame> frames_;

  bool java() const { return tree_.lang == Lang::JavaLite; }

  void tick() {
    if (steps_ >= fuel_) fault(FaultKind::FuelExhausted, "step budget exhausted");
    ++steps_;
  }

  // ------------------------------------------------------------- variables

  Var* lookup(const std::string& name) {
    if (!frames_.empty()) {
      Frame& f = frames_.back();
      for (auto it = f.scopes.rbegin(); it != f.scopes.rend(); ++it) {
        auto found = it->find(name);
        if (found != it->end()) return &found->second;
      }
      if (f.py_locals != nullptr && f.py_locals->count(name) != 0) return nullptr;
    }
    auto g = globals_.find(name);
    return g == globals_.end() ? nullptr : &g->second;
  }

  Value read(const std::string& name) {
    Var* v = lookup(name);
    if (v == nullptr) fault(FaultKind::UnboundName, "unbound name '" + name + "'");
    return v->value;
  }

  void check_type(TypeName t, const Value& v, const std::string& what) {
    if (!type_accepts(t, v)) {
      fault(FaultKind::TypeFault, std::string("type mismatch for ") + what + ": got " +
                                      type_label(v));
    }
  }

  void assign(const std::string& name, Value value) {
    if (!java()) {
      if (frames_.empty()) {
        globals_[name].value = std::move(value);
      } else {
        frames_.back().scopes.front()[name].value = std::move(value);
      }
      return;
    }
    Var* v = lookup(name);
    if (v == nullptr) fault(FaultKind::UnboundName, "assignment to undeclared '" + name + "'");
    check_type(v->type, value, "'" + name + "'");
    v->value = std::move(value);
  }

  void declare(const VarDecl& d) {
    Value v = d.init ? eval(*d.init) : default_value(d.type);
    check_type(d.type, v, "'" + d.name + "'");
    auto& scope = frames_.empty() ? globals_ : frames_.back().scopes.back();
    scope[d.name] = Var{d.type, std::move(v)};
  }

  void global(const Stmt& s) {
    tick();
    if (const auto* d = std::get_if<VarDecl>(&s.node)) {
      declare(*d);
    } else if (const auto* a = std::get_if<Assign>(&s.node)) {
      assign(a->target, eval(a->value));
    }
  }

  // ----------------------------------------------------------------- calls

  Value call(const Function& fn, std::vector<Value> args) {
    tick();
    if (static_cast<int>(frames_.size()) >= kMaxCallDepth) {
      fault(FaultKind::FuelExhausted, "call depth limit");
    }
    if (args.size() != fn.params.size()) {
      fault(FaultKind::TypeFault, "'" + fn.name + "' expects " +
                                      std::to_string(fn.params.size()) + " arguments");
    }
    Frame frame;
    frame.fn = &fn;
    frame.scopes.emplace_back();
    if (!java()) frame.py_locals = &py_locals_.at(fn.name);
    for (std::size_t i = 0; i < args.size(); ++i) {
      check_type(fn.params[i].type, args[i], "parameter '" + fn.params[i].name + "'");
      frame.scopes.front()[fn.params[i].name] = Var{fn.params[i].type, std::move(args[i])};
    }
    frames_.push_back(std::move(frame));
    const Flow flow = exec_block(fn.body.stmts, true);
    Value ret = std::move(frames_.back().ret);
    frames_.pop_back();
    if (flow == Flow::Break) fault(FaultKind::TypeFault, "break outside loop");
    if (java()) {
      if (flow != Flow::Return && fn.return_type != TypeName::Void) {
        fault(FaultKind::TypeFault, "missing return in '" + fn.name + "'");
      }
      check_type(fn.return_type, ret, "return value of '" + fn.name + "'");
    }
    return ret;
  }

  // ------------------------------------------------------------ statements

  Flow exec_block(const std::vector<Stmt>& stmts, bool fresh_scope_exists = false) {
    const bool scoped = java() && !fresh_scope_exists;
    if (scoped) frames_.back().scopes.emplace_back();
    Flow flow = Flow::Normal;
    for (const Stmt& s : stmts) {
      flow = exec(s);
      if (flow != Flow::Normal) break;
    }
    if (scoped) frames_.back().scopes.pop_back();
    return flow;
  }

  bool condition(const Expr& e) {
    Value v = eval(e);
    if (java()) {
      if (!v.is_bool()) fault(FaultKind::TypeFault, "condition is not boolean");
      return std::get<bool>(v.data);
    }
    return truthy(v);
  }

  static bool truthy(const Value& v) {
    if (v.is_bool()) return std::get<bool>(v.data);
    if (v.is_int()) return std::get<std::int64_t>(v.data) != 0;
    if (v.is_text()) return !std::get<std::string>(v.data).empty();
    return false;
  }

  std::int64_t as_int(const Value& v, const char* what) {
    if (!v.is_int()) fault(FaultKind::TypeFault, std::string(what) + " is not an int");
    return std::get<std::int64_t>(v.data);
  }

  Flow exec(const Stmt& s) {
    tick();
    return std::visit(
        [&](const auto& n) -> Flow {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, VarDecl>) {
            declare(n);
          } else if constexpr (std::is_same_v<T, Assign>) {
            assign(n.target, eval(n.value));
          } else if constexpr (std::is_same_v<T, If>) {
            if (condition(n.cond)) return exec_block(n.then_block.stmts);
            if (n.else_block) return exec_block(n.else_block->stmts);
          } else if constexpr (std::is_same_v<T, For>) {
            frames_.back().scopes.emplace_back();
            exec(*n.init);
            Flow result = Flow::Normal;
            for (;;) {
              tick();
              if (!condition(n.cond)) break;
              const Flow f = exec_block(n.body.stmts);
              if (f == Flow::Break) break;
              if (f == Flow::Return) {
                result = f;
                break;
              }
              exec(*n.update);
            }
            frames_.back().scopes.pop_back();
            return result;
          } else if constexpr (std::is_same_v<T, ForRange>) {
            const std::int64_t start = as_int(eval(n.start), "range start");
            const std::int64_t stop = as_int(eval(n.stop), "range stop");
            for (std::int64_t i = start;; ++i) {
              tick();
              if (i >= stop) break;
              assign(n.var, Value(i));
              const Flow f = exec_block(n.body.stmts);
              if (f == Flow::Break) break;
              if (f == Flow::Return) return f;
            }
          } else if constexpr (std::is_same_v<T, While>) {
            for (;;) {
              tick();
              if (!condition(n.cond)) break;
              const Flow f = exec_block(n.body.stmts);
              if (f == Flow::Break) break;
              if (f == Flow::Return) return f;
            }
          } else if constexpr (std::is_same_v<T, Switch>) {
            const std::int64_t subject = as_int(eval(n.subject), "switch subject");
            std::optional<std::size_t> start;
            for (std::size_t i = 0; i < n.cases.size() && !start; ++i) {
              if (n.cases[i].label && *n.cases[i].label == subject) start = i;
            }
            for (std::size_t i = 0; i < n.cases.size() && !start; ++i) {
              if (!n.cases[i].label) start = i;
            }
            if (!start) return Flow::Normal;
            frames_.back().scopes.emplace_back();
            Flow result = Flow::Normal;
            for (std::size_t i = *start; i < n.cases.size() && result == Flow::Normal; ++i) {
              for (const Stmt& inner : n.cases[i].body) {
                result = exec(inner);
                if (result != Flow::Normal) break;
              }
            }
            frames_.back().scopes.pop_back();
            return result == Flow::Break ? Flow::Normal : result;
          } else if constexpr (std::is_same_v<T, Return>) {
            frames_.back().ret = n.value ? eval(*n.value) : Value();
            return Flow::Return;
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            eval(n.expr);
          } else if constexpr (std::is_same_v<T, Print>) {
            out_ += render(eval(n.value), tree_.lang);
            out_ += "\n";
          } else if constexpr (std::is_same_v<T, Break>) {
            return Flow::Break;
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            return exec_block(n.block.stmts);
          }
          return Flow::Normal;
        },
        s.node);
  }

  // ----------------------------------------------------------- expressions

  Value eval(const Expr& e) {
    return std::visit(
        [&](const auto& n) -> Value {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Ident>) {
            return read(n.name);
          } else if constexpr (std::is_same_v<T, IntLit>) {
            return Value(n.value);
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return Value(n.value);
          } else if constexpr (std::is_same_v<T, StrLit>) {
            return Value(n.value);
          } else if constexpr (std::is_same_v<T, Paren>) {
            return eval(*n.inner);
          } else if constexpr (std::is_same_v<T, Unary>) {
            Value v = eval(*n.operand);
            if (n.op == UnaryOp::Neg) return Value(wrap_sub(0, as_int(v, "operand of '-'")));
            if (java()) {
              if (!v.is_bool()) fault(FaultKind::TypeFault, "operand of '!' is not boolean");
              return Value(!std::get<bool>(v.data));
            }
            return Value(!truthy(v));
          } else if constexpr (std::is_same_v<T, Call>) {
            auto it = functions_.find(n.callee);
            if (it == functions_.end()) {
              fault(FaultKind::UnboundName, "unknown function '" + n.callee + "'");
            }
            std::vector<Value> args;
            args.reserve(n.args.size());
            for (const auto& a : n.args) args.push_back(eval(*a));
            return call(*it->second, std::move(args));
          } else {
            return binary(n);
          }
        },
        e.node);
  }

  Value binary(const Binary& b) {
    if (b.op == BinaryOp::And || b.op == BinaryOp::Or) {
      Value lhs = eval(*b.lhs);
      if (java()) {
        if (!lhs.is_bool()) fault(FaultKind::TypeFault, "logical operand is not boolean");
        const bool l = std::get<bool>(lhs.data);
        if (b.op == BinaryOp::And ? !l : l) return Value(l);
        Value rhs = eval(*b.rhs);
        if (!rhs.is_bool()) fault(FaultKind::TypeFault, "logical operand is not boolean");
        return rhs;
      }
      const bool l = truthy(lhs);
      if (b.op == BinaryOp::And ? !l : l) return lhs;
      return eval(*b.rhs);
    }
    Value lhs = eval(*b.lhs);
    Value rhs = eval(*b.rhs);
    switch (b.op) {
      case BinaryOp::Add:
        if (lhs.is_int() && rhs.is_int()) {
          return Value(wrap_add(std::get<std::int64_t>(lhs.data), std::get<std::int64_t>(rhs.data)));
        }
        if (java() && (lhs.is_text() || rhs.is_text())) {
          return Value(render(lhs, tree_.lang) + render(rhs, tree_.lang));
        }
        if (!java() && lhs.is_text() && rhs.is_text()) {
          return Value(std::get<std::string>(lhs.data) + std::get<std::string>(rhs.data));
        }
        fault(FaultKind::TypeFault, std::string("cannot add ") + type_label(lhs) + " and " +
                                        type_label(rhs));
      case BinaryOp::Sub:
        return Value(wrap_sub(as_int(lhs, "operand of '-'"), as_int(rhs, "operand of '-'")));
      case BinaryOp::Mul:
        return Value(wrap_mul(as_int(lhs, "operand of '*'"), as_int(rhs, "operand of '*'")));
      case BinaryOp::Div:
        return Value(trunc_div(as_int(lhs, "dividend"), as_int(rhs, "divisor")));
      case BinaryOp::FloorDiv:
        return Value(floor_div(as_int(lhs, "dividend"), as_int(rhs, "divisor")));
      case BinaryOp::Mod:
        if (java()) return Value(trunc_mod(as_int(lhs, "dividend"), as_int(rhs, "divisor")));
        return Value(floor_mod(as_int(lhs, "dividend"), as_int(rhs, "divisor")));
      case BinaryOp::Eq:
      case BinaryOp::Ne: {
        bool equal;
        if (lhs.data.index() == rhs.data.index()) {
          equal = lhs == rhs;
        } else if (java()) {
          fault(FaultKind::TypeFault, std::string("cannot compare ") + type_label(lhs) + " and " +
                                          type_label(rhs));
        } else {
          equal = false;
        }
        return Value(b.op == BinaryOp::Eq ? equal : !equal);
      }
      default:
        break;
    }
    // Ordering comparisons.
    int cmp;
    if (lhs.is_int() && rhs.is_int()) {
      const auto l = std::get<std::int64_t>(lhs.data);
      const auto r = std::get<std::int64_t>(rhs.data);
      cmp = l < r ? -1 : (l > r ? 1 : 0);
    } else if (!java() && lhs.is_text() && rhs.is_text()) {
      cmp = std::get<std::string>(lhs.data).compare(std::get<std::string>(rhs.data));
    } else {
      fault(FaultKind::TypeFault, std::string("cannot order ") + type_label(lhs) + " and " +
                                      type_label(rhs));
    }
    switch (b.op) {
      case BinaryOp::Lt: return Value(cmp < 0);
      case BinaryOp::Le: return Value(cmp <= 0);
      case BinaryOp::Gt: return Value(cmp > 0);
      default: return Value(cmp >= 0);
    }
  }
};

bool block_prints(const std::vector<Stmt>& stmts);

bool stmt_prints(const Stmt& s) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Print>) {
          return true;
        } else if constexpr (std::is_same_v<T, If>) {
          return block_prints(n.then_block.stmts) ||
                 (n.else_block && block_prints(n.else_block->stmts));
        } else if constexpr (std::is_same_v<T, For> || std::is_same_v<T, ForRange> ||
                             std::is_same_v<T, While>) {
          return block_prints(n.body.stmts);
        } else if constexpr (std::is_same_v<T, Switch>) {
          for (const SwitchCase& c : n.cases) {
            if (block_prints(c.body)) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          return block_prints(n.block.stmts);
        } else {
          return false;
        }
      },
      s.node);
}

bool block_prints(const std::vector<Stmt>& stmts) {
  for (const Stmt& s : stmts) {
    if (stmt_prints(s)) return true;
  }
  return false;
}

}  // namespace

std::string render(const Value& value, Lang lang) {
  const bool java = lang == Lang::JavaLite;
  if (value.is_int()) return std::to_string(std::get<std::int64_t>(value.data));
  if (value.is_bool()) {
    const bool b = std::get<bool>(value.data);
    return java ? (b ? "true" : "false") : (b ? "True" : "False");
  }
  if (value.is_text()) return std::get<std::string>(value.data);
  return java ? "null" : "None";
}

std::string_view fault_kind_name(FaultKind kind) {
  switch (kind) {
    case FaultKind::FuelExhausted: return "FuelExhausted";
    case FaultKind::DivisionByZero: return "DivisionByZero";
    case FaultKind::UnboundName: return "UnboundName";
    case FaultKind::TypeFault: return "TypeFault";
  }
  return "?";
}

ExecResult execute(const SyntaxTree& tree, std::span<const Value> args, std::uint64_t fuel) {
  return Interpreter(tree, fuel).run(args);
}

ExecResult execute(const Program& program, std::span<const Value> args, std::uint64_t fuel) {
  return execute(parse_source(program.content, program.lang), args, fuel);
}

bool prints_output(const SyntaxTree& tree) {
  if (block_prints(tree.globals)) return true;
  for (const Function& fn : tree.functions) {
    if (block_prints(fn.body.stmts)) return true;
  }
  return false;
}

std::string observation(const ExecResult& result, Lang lang, bool with_stdout) {
  std::string text = with_stdout ? result.output : std::string();
  if (const auto* v = std::get_if<Value>(&result.outcome)) {
    text += "=> " + render(*v, lang);
  } else {
    text += "!! ";
    text += fault_kind_name(std::get<RuntimeFault>(result.outcome).kind);
  }
  return text;
}

}  // namespace gencode::ir
