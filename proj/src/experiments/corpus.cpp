#include "gencode/experiments/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "gencode/common/error.hpp"
#include "gencode/common/rng.hpp"
#include "gencode/ir/interpreter.hpp"
#include "gencode/ir/printer.hpp"

namespace gencode::experiments {

namespace {

using namespace ir;

constexpr std::array<std::string_view, 14> kTemplates = {
    "sum_range",      "sum_squares", "factorial_mod", "count_divisors", "count_evens",
    "digit_sum",      "fibonacci",   "power_mod",     "max_residue",    "gcd_sum",
    "prime_count",    "alternating_sum", "triangular_count", "reverse_digits",
};

const std::vector<std::string> kEntryNames = {"main", "run", "compute", "calc", "solve", "process"};
const std::vector<std::string> kHelperNames = {"helper", "aux", "step", "find", "test", "combine",
                                               "update", "apply"};
const std::vector<std::string> kParamNames = {"n", "x", "num", "limit", "val", "target"};
const std::vector<std::string> kSmallNames = {"a", "b", "base", "cur", "prev", "key", "term"};
const std::vector<std::string> kAccNames = {"count", "cnt", "total", "acc", "prod", "best"};
const std::vector<std::string> kLoopNames = {"i", "j", "k", "idx", "index", "row"};
const std::vector<std::string> kResultNames = {"result", "res", "out", "output", "answer"};
const std::vector<std::string> kNoiseNames = {"tmp", "flag", "half", "diff", "temp", "rest",
                                              "small", "big", "pair"};

// Builds language-neutral statements; JavaLite gets int declarations,
// PyLite plain assignments.
class Builder {
 public:
  Builder(Lang lang, Rng& rng) : lang_(lang), rng_(rng) {}

  bool java() const { return lang_ == Lang::JavaLite; }

  std::string pick(const std::vector<std::string>& pool) {
    for (;;) {
      const std::string& name = pool[rng_.index(pool.size())];
      if (taken_.insert(name).second) return name;
      if (std::all_of(pool.begin(), pool.end(), [&](const std::string& s) { return taken_.count(s); })) {
        std::string fallback = name + "_" + std::to_string(taken_.size());
        taken_.insert(fallback);
        return fallback;
      }
    }
  }

  Stmt decl(const std::string& name, Expr init) const {
    if (java()) return make_stmt(VarDecl{TypeName::Int, name, std::move(init)});
    return make_stmt(Assign{name, std::move(init)});
  }
  static Stmt assign(const std::string& name, Expr value) {
    return make_stmt(Assign{name, std::move(value)});
  }
  static Stmt ret(Expr e) { return make_stmt(Return{std::move(e)}); }
  static Stmt if_then(Expr cond, std::vector<Stmt> body) {
    If node{std::move(cond), Block{std::move(body)}, std::nullopt};
    return make_stmt(std::move(node));
  }
  static Stmt while_loop(Expr cond, std::vector<Stmt> body) {
    return make_stmt(While{std::move(cond), Block{std::move(body)}});
  }

  // for var in [start, stop_inclusive]
  Stmt for_upto(const std::string& var, Expr start, Expr last, std::vector<Stmt> body,
                bool strict_form) const {
    if (java()) {
      Expr cond = strict_form
                      ? make_binary(BinaryOp::Lt, make_ident(var),
                                    make_binary(BinaryOp::Add, std::move(last), make_int(1)))
                      : make_binary(BinaryOp::Le, make_ident(var), std::move(last));
      For f{Box<Stmt>(decl(var, std::move(start))), std::move(cond),
            Box<Stmt>(assign(var, make_binary(BinaryOp::Add, make_ident(var), make_int(1)))),
            Block{std::move(body)}};
      return make_stmt(std::move(f));
    }
    return make_stmt(ForRange{var, std::move(start),
                              make_binary(BinaryOp::Add, std::move(last), make_int(1)),
                              Block{std::move(body)}});
  }

  Expr div(Expr a, Expr b) const {
    return make_binary(java() ? BinaryOp::Div : BinaryOp::FloorDiv, std::move(a), std::move(b));
  }

  static Expr call(const std::string& f, Expr a, Expr b) {
    Call c{f, {}};
    c.args.emplace_back(std::move(a));
    c.args.emplace_back(std::move(b));
    return Expr{std::move(c)};
  }

  Function function(const std::string& name, std::vector<std::string> params,
                    std::vector<Stmt> body) const {
    Function fn;
    fn.name = name;
    fn.return_type = java() ? TypeName::Int : TypeName::Dynamic;
    for (auto& p : params) fn.params.push_back(Param{java() ? TypeName::Int : TypeName::Dynamic, p});
    fn.body = Block{std::move(body)};
    return fn;
  }

 private:
  Lang lang_;
  Rng& rng_;
  std::set<std::string> taken_;
};

Expr id(const std::string& n) { return make_ident(n); }
Expr lit(std::int64_t v) { return make_int(v); }
Expr bin(BinaryOp op, Expr a, Expr b) { return make_binary(op, std::move(a), std::move(b)); }

struct Shape {
  std::vector<Stmt> helper_body;
  std::int64_t acc_init = 0;
  std::vector<Stmt> loop_body;
  std::int64_t loop_start = 1;
  std::vector<Stmt> extra_decls;  // template-specific entry declarations
};

// Per-template helper body and loop body. `a`, `b` are helper params, `h` the
// helper name, `acc` the accumulator, `i` the loop variable, `n` the entry
// parameter.
Shape shape_for(std::size_t t, Builder& bd, Rng& rng, const std::string& h, const std::string& a,
                const std::string& b, const std::string& acc, const std::string& i,
                const std::string& n) {
  Shape s;
  auto acc_from_call = [&](Expr x, Expr y) {
    s.loop_body.push_back(Builder::assign(acc, Builder::call(h, std::move(x), std::move(y))));
  };
  switch (t) {
    case 0:  // sum_range
      s.helper_body.push_back(Builder::ret(bin(BinaryOp::Add, id(a), id(b))));
      acc_from_call(id(acc), id(i));
      break;
    case 1:  // sum_squares
      s.helper_body.push_back(
          Builder::ret(bin(BinaryOp::Add, id(a), bin(BinaryOp::Mul, id(b), id(b)))));
      acc_from_call(id(acc), id(i));
      break;
    case 2:  // factorial_mod
      s.acc_init = 1;
      s.helper_body.push_back(Builder::ret(
          bin(BinaryOp::Mod, bin(BinaryOp::Mul, id(a), id(b)), lit(std::array{1009, 997, 1013}[rng.index(3)]))));
      acc_from_call(id(acc), id(i));
      break;
    case 3:  // count_divisors
      s.helper_body.push_back(Builder::if_then(
          bin(BinaryOp::Eq, bin(BinaryOp::Mod, id(b), id(a)), lit(0)), {Builder::ret(lit(1))}));
      s.helper_body.push_back(Builder::ret(lit(0)));
      s.loop_body.push_back(Builder::assign(
          acc, bin(BinaryOp::Add, id(acc), Builder::call(h, id(i), id(n)))));
      break;
    case 4:  // count_evens
      s.helper_body.push_back(Builder::if_then(
          bin(BinaryOp::Eq, bin(BinaryOp::Mod, id(a), lit(2)), lit(0)),
          {Builder::ret(bin(BinaryOp::Add, id(b), lit(1)))}));
      s.helper_body.push_back(Builder::ret(id(b)));
      acc_from_call(id(i), id(acc));
      break;
    case 5:    // digit_sum
    case 13: {  // reverse_digits
      const std::string d = bd.pick(kNoiseNames);
      s.helper_body.push_back(bd.decl(d, lit(0)));
      Expr next = t == 5 ? bin(BinaryOp::Add, id(d), bin(BinaryOp::Mod, id(a), lit(10)))
                         : bin(BinaryOp::Add, bin(BinaryOp::Mul, id(d), lit(10)),
                               bin(BinaryOp::Mod, id(a), lit(10)));
      std::vector<Stmt> body;
      body.push_back(Builder::assign(d, std::move(next)));
      body.push_back(Builder::assign(a, bd.div(id(a), lit(10))));
      s.helper_body.push_back(Builder::while_loop(bin(BinaryOp::Gt, id(a), lit(0)), std::move(body)));
      s.helper_body.push_back(Builder::ret(bin(BinaryOp::Add, id(d), id(b))));
      if (t == 13) {
        s.loop_body.push_back(Builder::assign(
            acc, bin(BinaryOp::Mod, Builder::call(h, bin(BinaryOp::Mul, id(i), lit(7)), id(acc)),
                     lit(10007))));
      } else {
        acc_from_call(id(i), id(acc));
      }
      break;
    }
    case 6: {  // fibonacci
      const std::string p = bd.pick(kNoiseNames);
      const std::string tmp = bd.pick(kNoiseNames);
      s.loop_start = 0;
      s.extra_decls.push_back(bd.decl(p, lit(1)));
      s.helper_body.push_back(
          Builder::ret(bin(BinaryOp::Mod, make_paren(bin(BinaryOp::Add, id(a), id(b))), lit(1000))));
      s.loop_body.push_back(bd.decl(tmp, Builder::call(h, id(acc), id(p))));
      s.loop_body.push_back(Builder::assign(acc, id(p)));
      s.loop_body.push_back(Builder::assign(p, id(tmp)));
      break;
    }
    case 7:  // power_mod
      s.acc_init = 1;
      s.helper_body.push_back(
          Builder::ret(bin(BinaryOp::Mod, bin(BinaryOp::Mul, id(a), id(b)), lit(997))));
      acc_from_call(id(acc), lit(std::array{2, 3, 5, 7}[rng.index(4)]));
      break;
    case 8: {  // max_residue
      const std::string v = bd.pick(kNoiseNames);
      s.helper_body.push_back(Builder::ret(bin(
          BinaryOp::Mod, make_paren(bin(BinaryOp::Add, bin(BinaryOp::Mul, id(a), lit(7)), id(b))),
          lit(11))));
      s.loop_body.push_back(bd.decl(v, Builder::call(h, id(i), lit(3))));
      s.loop_body.push_back(
          Builder::if_then(bin(BinaryOp::Gt, id(v), id(acc)), {Builder::assign(acc, id(v))}));
      break;
    }
    case 9: {  // gcd_sum
      const std::string tmp = bd.pick(kNoiseNames);
      std::vector<Stmt> body;
      body.push_back(bd.decl(tmp, bin(BinaryOp::Mod, id(a), id(b))));
      body.push_back(Builder::assign(a, id(b)));
      body.push_back(Builder::assign(b, id(tmp)));
      s.helper_body.push_back(Builder::while_loop(bin(BinaryOp::Ne, id(b), lit(0)), std::move(body)));
      s.helper_body.push_back(Builder::ret(id(a)));
      s.loop_body.push_back(Builder::assign(
          acc, bin(BinaryOp::Add, id(acc), Builder::call(h, id(i), id(n)))));
      break;
    }
    case 10: {  // prime_count
      const std::string j = bd.pick(kLoopNames);
      s.helper_body.push_back(
          Builder::if_then(bin(BinaryOp::Lt, id(a), lit(2)), {Builder::ret(id(b))}));
      std::vector<Stmt> inner;
      inner.push_back(Builder::if_then(bin(BinaryOp::Eq, bin(BinaryOp::Mod, id(a), id(j)), lit(0)),
                                       {Builder::ret(id(b))}));
      Stmt loop = bd.for_upto(j, lit(2), bin(BinaryOp::Sub, id(a), lit(1)), std::move(inner), false);
      s.helper_body.push_back(std::move(loop));
      s.helper_body.push_back(Builder::ret(bin(BinaryOp::Add, id(b), lit(1))));
      acc_from_call(id(i), id(acc));
      break;
    }
    case 11:  // alternating_sum
      s.helper_body.push_back(Builder::if_then(
          bin(BinaryOp::Eq, bin(BinaryOp::Mod, id(b), lit(2)), lit(0)),
          {Builder::ret(bin(BinaryOp::Add, id(a), id(b)))}));
      s.helper_body.push_back(Builder::ret(bin(BinaryOp::Sub, id(a), id(b))));
      acc_from_call(id(acc), id(i));
      break;
    case 12:  // triangular_count
      s.helper_body.push_back(Builder::if_then(
          bin(BinaryOp::Eq,
              bin(BinaryOp::Mod,
                  bd.div(bin(BinaryOp::Mul, id(a), make_paren(bin(BinaryOp::Add, id(a), lit(1)))),
                         lit(2)),
                  lit(3)),
              lit(0)),
          {Builder::ret(bin(BinaryOp::Add, id(b), lit(1)))}));
      s.helper_body.push_back(Builder::ret(id(b)));
      acc_from_call(id(i), id(acc));
      break;
    default:
      throw Error(ErrorFamily::Internal, "Internal", "unknown template");
  }
  return s;
}

// Statements that touch only `noise` and read `i`; they never change the
// result but borrow surface tokens from other templates.
Stmt distractor(Rng& rng, const std::string& noise, const std::string& i, Builder& bd) {
  switch (rng.index(7)) {
    case 0:
      return Builder::assign(noise, bin(BinaryOp::Mod, bin(BinaryOp::Mul, id(i), id(i)), lit(101)));
    case 1:
      return Builder::assign(noise, bin(BinaryOp::Mod, id(i), lit(2)));
    case 2:
      return Builder::assign(
          noise, bin(BinaryOp::Mod, make_paren(bin(BinaryOp::Add, id(noise), id(i))), lit(1000)));
    case 3:
      return Builder::assign(noise, bd.div(id(i), lit(10)));
    case 4:
      return Builder::assign(noise, bin(BinaryOp::Mod, id(i), lit(10)));
    case 5:
      return Builder::assign(noise, bin(BinaryOp::Mod, bin(BinaryOp::Mul, id(noise), lit(3)), lit(997)));
    default:
      return Builder::assign(noise, bin(BinaryOp::Sub, id(i), lit(1)));
  }
}

SyntaxTree build_program(std::size_t t, Lang lang, Rng& rng) {
  Builder bd(lang, rng);
  const std::string helper = bd.pick(kHelperNames);
  const std::string entry = bd.pick(kEntryNames);
  const std::string a = bd.pick(kSmallNames);
  const std::string b = bd.pick(kSmallNames);
  const std::string n = bd.pick(kParamNames);
  const std::string acc = bd.pick(kAccNames);
  const std::string i = bd.pick(kLoopNames);
  const std::string result = bd.pick(kResultNames);

  Shape shape = shape_for(t, bd, rng, helper, a, b, acc, i, n);

  std::vector<Stmt> decls;
  decls.push_back(bd.decl(acc, lit(shape.acc_init)));
  for (auto& d : shape.extra_decls) decls.push_back(std::move(d));
  std::vector<std::string> noise;
  const std::size_t noise_count = 1 + rng.index(2);
  for (std::size_t k = 0; k < noise_count; ++k) {
    noise.push_back(bd.pick(kNoiseNames));
    decls.push_back(bd.decl(noise.back(), lit(static_cast<std::int64_t>(rng.index(10)))));
  }
  rng.shuffle(decls);

  std::vector<Stmt> body = std::move(decls);
  const std::int64_t cap = 15 + static_cast<std::int64_t>(rng.index(11));
  body.push_back(Builder::if_then(bin(BinaryOp::Gt, id(n), lit(cap)), {Builder::assign(n, lit(cap))}));

  std::vector<Stmt> loop_body = std::move(shape.loop_body);
  const std::size_t distractors = rng.index(3);
  for (std::size_t k = 0; k < distractors; ++k) {
    Stmt d = distractor(rng, noise[rng.index(noise.size())], i, bd);
    loop_body.insert(loop_body.begin() + static_cast<std::ptrdiff_t>(rng.index(loop_body.size() + 1)),
                     std::move(d));
  }
  body.push_back(bd.for_upto(i, lit(shape.loop_start), id(n), std::move(loop_body), rng.index(2) == 0));
  if (rng.index(2) == 0) {
    const std::string& nv = noise[rng.index(noise.size())];
    body.push_back(Builder::assign(nv, bin(BinaryOp::Add, id(nv), lit(1))));
  }
  Expr final_value = rng.index(2) == 0 ? id(acc) : bin(BinaryOp::Mod, id(acc), lit(100000));
  body.push_back(bd.decl(result, std::move(final_value)));
  body.push_back(Builder::ret(id(result)));

  SyntaxTree tree;
  tree.lang = lang;
  tree.functions.push_back(bd.function(helper, {a, b}, std::move(shape.helper_body)));
  tree.functions.push_back(bd.function(entry, {n}, std::move(body)));
  return canonicalize(tree);
}

}  // namespace

std::size_t template_count() { return kTemplates.size(); }

std::string_view template_name(std::size_t index) { return kTemplates.at(index); }

std::vector<ir::Program> generate_corpus(const CorpusConfig& cfg) {
  if (cfg.classes < 2 || cfg.classes > kTemplates.size()) {
    throw Error(ErrorFamily::Usage, "InvalidConfig",
                "classes must be in [2, " + std::to_string(kTemplates.size()) + "]");
  }
  if (cfg.per_class == 0) throw Error(ErrorFamily::Usage, "InvalidConfig", "per_class must be > 0");
  Rng rng(cfg.seed);
  std::vector<ir::Program> out;
  out.reserve(cfg.classes * cfg.per_class);
  for (std::size_t k = 0; k < cfg.per_class; ++k) {
    for (std::size_t t = 0; t < cfg.classes; ++t) {
      Lang lang = Lang::JavaLite;
      if (cfg.langs == LangMix::Python || (cfg.langs == LangMix::Both && rng.index(2) == 1)) {
        lang = Lang::PyLite;
      }
      SyntaxTree tree = build_program(t, lang, rng);
      ir::Program p;
      p.id = cfg.id_prefix + std::to_string(out.size());
      p.lang = lang;
      p.content = print(tree);
      p.label = static_cast<int>(t);
      for (std::size_t arg : rng.sample_without_replacement(13, std::min<std::size_t>(cfg.io_pairs, 13))) {
        std::vector<Value> args{Value(static_cast<std::int64_t>(arg))};
        ExecResult r = execute(tree, args);
        p.io_pairs.push_back(IoPair{args, observation(r, lang, false)});
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

Split split_corpus(std::span<const ir::Program> programs, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorFamily::Usage, "InvalidConfig", "test_fraction must be in (0, 1)");
  }
  std::map<int, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < programs.size(); ++i) by_label[programs[i].label].push_back(i);
  Rng rng(seed);
  std::vector<bool> is_test(programs.size(), false);
  for (auto& [label, idx] : by_label) {
    rng.shuffle(idx);
    const auto take = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(idx.size())));
    for (std::size_t k = 0; k < take && k < idx.size(); ++k) is_test[idx[k]] = true;
  }
  Split split;
  for (std::size_t i = 0; i < programs.size(); ++i) {
    (is_test[i] ? split.test : split.train).push_back(programs[i]);
  }
  return split;
}

}  // namespace gencode::experiments
