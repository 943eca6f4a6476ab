#include "gencode/ir/parser.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace gencode::ir {

namespace {

class Parser {
 public:
  Parser(std::span<const Token> tokens, Lang lang) : lang_(lang) {
    for (const Token& t : tokens) {
      // JavaLite is free-form: line structure only matters to the text ops.
      if (lang == Lang::JavaLite && t.kind == TokenKind::Newline) continue;
      toks_.push_back(&t);
      end_offset_ = t.offset + t.length;
    }
  }

  SyntaxTree run() {
    SyntaxTree tree;
    tree.lang = lang_;
    if (lang_ == Lang::JavaLite) {
      while (!at_end()) parse_java_toplevel(tree);
    } else {
      while (!at_end()) parse_py_toplevel(tree);
    }
    return tree;
  }

 private:
  Lang lang_;
  std::vector<const Token*> toks_;
  std::size_t pos_ = 0;
  std::size_t end_offset_ = 0;

  // ---------------------------------------------------------------- helpers

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token* peek_tok(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : nullptr;
  }
  bool check(TokenKind kind, std::string_view text, std::size_t ahead = 0) const {
    const Token* t = peek_tok(ahead);
    return t != nullptr && t->kind == kind && t->text == text;
  }
  bool check_kind(TokenKind kind, std::size_t ahead = 0) const {
    const Token* t = peek_tok(ahead);
    return t != nullptr && t->kind == kind;
  }
  bool check_op(std::string_view text) const { return check(TokenKind::Operator, text); }
  bool check_punct(std::string_view text) const { return check(TokenKind::Punct, text); }
  bool check_kw(std::string_view text) const { return check(TokenKind::Keyword, text); }

  std::size_t here() const { return at_end() ? end_offset_ : toks_[pos_]->offset; }
  // End of the last consumed lexeme, skipping layout tokens.
  std::size_t prev_end() const {
    for (std::size_t i = pos_; i > 0; --i) {
      const Token* t = toks_[i - 1];
      if (!is_layout(t->kind) || t->length > 0) return t->offset + t->length;
    }
    return 0;
  }

  std::string describe_here() const {
    if (at_end()) return "end of input";
    const Token* t = toks_[pos_];
    if (t->kind == TokenKind::Newline) return "newline";
    if (t->kind == TokenKind::Indent) return "indent";
    if (t->kind == TokenKind::Dedent) return "dedent";
    return "'" + t->text + "'";
  }

  [[noreturn]] void error(const std::string& expected) const {
    throw ParseError(here(), expected, describe_here());
  }

  const Token& advance() { return *toks_[pos_++]; }

  const Token& expect(TokenKind kind, std::string_view text) {
    if (!check(kind, text)) error("'" + std::string(text) + "'");
    return advance();
  }
  std::string expect_ident() {
    if (!check_kind(TokenKind::Identifier)) error("identifier");
    return advance().text;
  }
  void expect_newline() {
    if (!check_kind(TokenKind::Newline)) error("newline");
    advance();
  }

  Span span_from(std::size_t start) const { return Span{start, prev_end() - start}; }

  // ------------------------------------------------------------ expressions

  static std::int64_t int_value(const Token& tok) {
    std::uint64_t v = 0;
    constexpr std::uint64_t kMax = std::uint64_t{1} << 63;
    for (char c : tok.text) {
      const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
      if (v > (kMax - digit) / 10) {
        throw ParseError(tok.offset, "integer literal <= 9223372036854775808", tok.text);
      }
      v = v * 10 + digit;
    }
    return static_cast<std::int64_t>(v);
  }

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    const std::string_view op = lang_ == Lang::JavaLite ? "||" : "or";
    const TokenKind kind = lang_ == Lang::JavaLite ? TokenKind::Operator : TokenKind::Keyword;
    while (check(kind, op)) {
      advance();
      lhs = make_binary(BinaryOp::Or, std::move(lhs), parse_and());
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = lang_ == Lang::JavaLite ? parse_java_equality() : parse_py_not();
    const std::string_view op = lang_ == Lang::JavaLite ? "&&" : "and";
    const TokenKind kind = lang_ == Lang::JavaLite ? TokenKind::Operator : TokenKind::Keyword;
    while (check(kind, op)) {
      advance();
      Expr rhs = lang_ == Lang::JavaLite ? parse_java_equality() : parse_py_not();
      lhs = make_binary(BinaryOp::And, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_java_equality() {
    Expr lhs = parse_java_relational();
    while (check_op("==") || check_op("!=")) {
      const BinaryOp op = advance().text == "==" ? BinaryOp::Eq : BinaryOp::Ne;
      lhs = make_binary(op, std::move(lhs), parse_java_relational());
    }
    return lhs;
  }

  std::optional<BinaryOp> relational_op() const {
    if (check_op("<")) return BinaryOp::Lt;
    if (check_op("<=")) return BinaryOp::Le;
    if (check_op(">")) return BinaryOp::Gt;
    if (check_op(">=")) return BinaryOp::Ge;
    return std::nullopt;
  }

  Expr parse_java_relational() {
    Expr lhs = parse_additive();
    while (auto op = relational_op()) {
      advance();
      lhs = make_binary(*op, std::move(lhs), parse_additive());
    }
    return lhs;
  }

  Expr parse_py_not() {
    if (check_kw("not")) {
      advance();
      return make_unary(UnaryOp::Not, parse_py_not());
    }
    return parse_py_comparison();
  }

  std::optional<BinaryOp> py_comparison_op() const {
    if (check_op("==")) return BinaryOp::Eq;
    if (check_op("!=")) return BinaryOp::Ne;
    return relational_op();
  }

  Expr parse_py_comparison() {
    Expr lhs = parse_additive();
    if (auto op = py_comparison_op()) {
      advance();
      lhs = make_binary(*op, std::move(lhs), parse_additive());
      if (py_comparison_op()) error("end of comparison (chained comparisons are unsupported)");
    }
    return lhs;
  }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    while (check_op("+") || check_op("-")) {
      const BinaryOp op = advance().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make_binary(op, std::move(lhs), parse_multiplicative());
    }
    return lhs;
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_unary();
    for (;;) {
      BinaryOp op;
      if (check_op("*")) {
        op = BinaryOp::Mul;
      } else if (check_op("%")) {
        op = BinaryOp::Mod;
      } else if (lang_ == Lang::JavaLite && check_op("/")) {
        op = BinaryOp::Div;
      } else if (lang_ == Lang::PyLite && check_op("//")) {
        op = BinaryOp::FloorDiv;
      } else {
        break;
      }
      advance();
      lhs = make_binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Expr parse_unary() {
    if (check_op("-")) {
      advance();
      return make_unary(UnaryOp::Neg, parse_unary());
    }
    if (lang_ == Lang::JavaLite && check_op("!")) {
      advance();
      return make_unary(UnaryOp::Not, parse_unary());
    }
    return parse_primary();
  }

  Expr parse_primary() {
    if (at_end()) error("expression");
    const Token& t = *toks_[pos_];
    switch (t.kind) {
      case TokenKind::IntLiteral:
        advance();
        return make_int(int_value(t));
      case TokenKind::StringLiteral:
        advance();
        return make_str(decode_string(t));
      case TokenKind::Keyword:
        if (t.text == "true" || t.text == "True") {
          advance();
          return make_bool(true);
        }
        if (t.text == "false" || t.text == "False") {
          advance();
          return make_bool(false);
        }
        break;
      case TokenKind::Identifier: {
        advance();
        if (check_punct("(")) return Expr{parse_call_args(t.text)};
        return make_ident(t.text);
      }
      case TokenKind::Punct:
        if (t.text == "(") {
          advance();
          Expr inner = parse_expr();
          expect(TokenKind::Punct, ")");
          return make_paren(std::move(inner));
        }
        break;
      default:
        break;
    }
    error("expression");
  }

  Call parse_call_args(std::string callee) {
    Call call;
    call.callee = std::move(callee);
    expect(TokenKind::Punct, "(");
    if (!check_punct(")")) {
      call.args.emplace_back(parse_expr());
      while (check_punct(",")) {
        advance();
        call.args.emplace_back(parse_expr());
      }
    }
    expect(TokenKind::Punct, ")");
    return call;
  }

  static std::string decode_string(const Token& t) {
    std::string out;
    const std::string& s = t.text;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      if (s[i] == '\\' && i + 2 < s.size()) {
        ++i;
        switch (s[i]) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '\\': out.push_back('\\'); break;
          case '"': out.push_back('"'); break;
          case '\'': out.push_back('\''); break;
          default:
            throw ParseError(t.offset + i, "known escape sequence", std::string("\\") + s[i]);
        }
      } else {
        out.push_back(s[i]);
      }
    }
    return out;
  }

  // ---------------------------------------------------------------- JavaLite

  std::optional<TypeName> java_type(bool allow_void) const {
    const Token* t = peek_tok();
    if (t == nullptr || t->kind != TokenKind::Keyword) return std::nullopt;
    if (t->text == "int") return TypeName::Int;
    if (t->text == "boolean") return TypeName::Boolean;
    if (t->text == "String") return TypeName::String;
    if (allow_void && t->text == "void") return TypeName::Void;
    return std::nullopt;
  }

  void parse_java_toplevel(SyntaxTree& tree) {
    const std::size_t start = here();
    auto type = java_type(true);
    if (!type) error("type");
    advance();
    std::string name = expect_ident();
    if (check_punct("(")) {
      Function fn;
      fn.return_type = *type;
      fn.name = std::move(name);
      advance();
      if (!check_punct(")")) {
        fn.params.push_back(parse_java_param());
        while (check_punct(",")) {
          advance();
          fn.params.push_back(parse_java_param());
        }
      }
      expect(TokenKind::Punct, ")");
      fn.body = parse_java_block();
      fn.span = span_from(start);
      tree.functions.push_back(std::move(fn));
      return;
    }
    if (*type == TypeName::Void) error("'(' after void");
    VarDecl decl{*type, std::move(name), std::nullopt};
    if (check_op("=")) {
      advance();
      decl.init = parse_expr();
    }
    expect(TokenKind::Punct, ";");
    tree.globals.push_back(Stmt{std::move(decl), span_from(start)});
  }

  Param parse_java_param() {
    auto type = java_type(false);
    if (!type) error("parameter type");
    advance();
    return Param{*type, expect_ident()};
  }

  Block parse_java_block() {
    expect(TokenKind::Punct, "{");
    Block block;
    while (!check_punct("}")) {
      if (at_end()) error("'}'");
      block.stmts.push_back(parse_java_stmt());
    }
    advance();
    return block;
  }

  // Declaration or assignment without the trailing ';' (for-init / update).
  Stmt parse_java_simple(bool allow_decl) {
    const std::size_t start = here();
    if (auto type = java_type(false)) {
      if (!allow_decl) error("assignment");
      advance();
      VarDecl decl{*type, expect_ident(), std::nullopt};
      if (check_op("=")) {
        advance();
        decl.init = parse_expr();
      }
      return Stmt{std::move(decl), span_from(start)};
    }
    std::string target = expect_ident();
    expect(TokenKind::Operator, "=");
    Expr value = parse_expr();
    return Stmt{Assign{std::move(target), std::move(value)}, span_from(start)};
  }

  Stmt parse_java_stmt() {
    const std::size_t start = here();
    if (check_punct("{")) {
      Block b = parse_java_block();
      return Stmt{BlockStmt{std::move(b)}, span_from(start)};
    }
    if (check_punct(";")) {
      advance();
      return Stmt{Empty{}, span_from(start)};
    }
    if (java_type(false)) {
      Stmt s = parse_java_simple(true);
      expect(TokenKind::Punct, ";");
      s.span = span_from(start);
      return s;
    }
    if (check_kw("if")) return parse_java_if();
    if (check_kw("for")) {
      advance();
      expect(TokenKind::Punct, "(");
      Stmt init = parse_java_simple(true);
      expect(TokenKind::Punct, ";");
      Expr cond = parse_expr();
      expect(TokenKind::Punct, ";");
      Stmt update = parse_java_simple(false);
      expect(TokenKind::Punct, ")");
      Block body = parse_java_block();
      return Stmt{For{std::move(init), std::move(cond), std::move(update), std::move(body)},
                  span_from(start)};
    }
    if (check_kw("while")) {
      advance();
      expect(TokenKind::Punct, "(");
      Expr cond = parse_expr();
      expect(TokenKind::Punct, ")");
      Block body = parse_java_block();
      return Stmt{While{std::move(cond), std::move(body)}, span_from(start)};
    }
    if (check_kw("switch")) return parse_java_switch();
    if (check_kw("return")) {
      advance();
      Return r;
      if (!check_punct(";")) r.value = parse_expr();
      expect(TokenKind::Punct, ";");
      return Stmt{std::move(r), span_from(start)};
    }
    if (check_kw("break")) {
      advance();
      expect(TokenKind::Punct, ";");
      return Stmt{Break{}, span_from(start)};
    }
    if (check(TokenKind::Identifier, "System") && check(TokenKind::Punct, ".", 1)) {
      advance();
      expect(TokenKind::Punct, ".");
      if (!check(TokenKind::Identifier, "out")) error("'out'");
      advance();
      expect(TokenKind::Punct, ".");
      if (!check(TokenKind::Identifier, "println")) error("'println'");
      advance();
      expect(TokenKind::Punct, "(");
      Expr value = parse_expr();
      expect(TokenKind::Punct, ")");
      expect(TokenKind::Punct, ";");
      return Stmt{Print{std::move(value)}, span_from(start)};
    }
    if (check_kind(TokenKind::Identifier) && check(TokenKind::Operator, "=", 1)) {
      Stmt s = parse_java_simple(false);
      expect(TokenKind::Punct, ";");
      s.span = span_from(start);
      return s;
    }
    Expr e = parse_expr();
    expect(TokenKind::Punct, ";");
    return Stmt{ExprStmt{std::move(e)}, span_from(start)};
  }

  Stmt parse_java_if() {
    const std::size_t start = here();
    expect(TokenKind::Keyword, "if");
    expect(TokenKind::Punct, "(");
    Expr cond = parse_expr();
    expect(TokenKind::Punct, ")");
    If node{std::move(cond), parse_java_block(), std::nullopt};
    if (check_kw("else")) {
      advance();
      if (check_kw("if")) {
        Block b;
        b.stmts.push_back(parse_java_if());
        node.else_block = std::move(b);
      } else {
        node.else_block = parse_java_block();
      }
    }
    return Stmt{std::move(node), span_from(start)};
  }

  Stmt parse_java_switch() {
    const std::size_t start = here();
    expect(TokenKind::Keyword, "switch");
    expect(TokenKind::Punct, "(");
    Switch sw{parse_expr(), {}};
    expect(TokenKind::Punct, ")");
    expect(TokenKind::Punct, "{");
    while (!check_punct("}")) {
      SwitchCase c;
      if (check_kw("case")) {
        advance();
        bool negative = false;
        if (check_op("-")) {
          advance();
          negative = true;
        }
        if (!check_kind(TokenKind::IntLiteral)) error("integer case label");
        const std::int64_t v = int_value(advance());
        c.label = negative ? static_cast<std::int64_t>(0ULL - static_cast<std::uint64_t>(v)) : v;
      } else if (check_kw("default")) {
        advance();
      } else {
        error("'case', 'default' or '}'");
      }
      expect(TokenKind::Punct, ":");
      while (!check_kw("case") && !check_kw("default") && !check_punct("}")) {
        if (at_end()) error("'}'");
        c.body.push_back(parse_java_stmt());
      }
      sw.cases.push_back(std::move(c));
    }
    advance();
    return Stmt{std::move(sw), span_from(start)};
  }

  // ------------------------------------------------------------------ PyLite

  void parse_py_toplevel(SyntaxTree& tree) {
    const std::size_t start = here();
    if (check_kw("def")) {
      advance();
      Function fn;
      fn.return_type = TypeName::Dynamic;
      fn.name = expect_ident();
      expect(TokenKind::Punct, "(");
      if (!check_punct(")")) {
        fn.params.push_back(Param{TypeName::Dynamic, expect_ident()});
        while (check_punct(",")) {
          advance();
          fn.params.push_back(Param{TypeName::Dynamic, expect_ident()});
        }
      }
      expect(TokenKind::Punct, ")");
      fn.body = parse_py_suite();
      fn.span = span_from(start);
      tree.functions.push_back(std::move(fn));
      return;
    }
    if (check_kind(TokenKind::Identifier) && check(TokenKind::Operator, "=", 1)) {
      std::string target = advance().text;
      advance();
      Expr value = parse_expr();
      const Span span = span_from(start);
      expect_newline();
      tree.globals.push_back(Stmt{Assign{std::move(target), std::move(value)}, span});
      return;
    }
    error("'def' or global assignment");
  }

  Block parse_py_suite() {
    expect(TokenKind::Punct, ":");
    expect_newline();
    if (!check_kind(TokenKind::Indent)) error("indented block");
    advance();
    Block block;
    while (!check_kind(TokenKind::Dedent)) {
      if (at_end()) error("dedent");
      block.stmts.push_back(parse_py_stmt());
    }
    advance();
    return block;
  }

  Stmt parse_py_simple_end(decltype(Stmt::node) node, std::size_t start) {
    const Span span = span_from(start);
    expect_newline();
    return Stmt{std::move(node), span};
  }

  Stmt parse_py_stmt() {
    const std::size_t start = here();
    if (check_kw("if")) return parse_py_if();
    if (check_kw("for")) {
      advance();
      std::string var = expect_ident();
      expect(TokenKind::Keyword, "in");
      if (!check(TokenKind::Identifier, "range")) error("'range'");
      advance();
      expect(TokenKind::Punct, "(");
      Expr first = parse_expr();
      Expr start_expr = make_int(0);
      Expr stop_expr;
      if (check_punct(",")) {
        advance();
        start_expr = std::move(first);
        stop_expr = parse_expr();
      } else {
        stop_expr = std::move(first);
      }
      expect(TokenKind::Punct, ")");
      Block body = parse_py_suite();
      return Stmt{ForRange{std::move(var), std::move(start_expr), std::move(stop_expr),
                           std::move(body)},
                  span_from(start)};
    }
    if (check_kw("while")) {
      advance();
      Expr cond = parse_expr();
      Block body = parse_py_suite();
      return Stmt{While{std::move(cond), std::move(body)}, span_from(start)};
    }
    if (check_kw("return")) {
      advance();
      Return r;
      if (!check_kind(TokenKind::Newline)) r.value = parse_expr();
      return parse_py_simple_end(std::move(r), start);
    }
    if (check_kw("pass")) {
      advance();
      return parse_py_simple_end(Empty{}, start);
    }
    if (check_kw("break")) {
      advance();
      return parse_py_simple_end(Break{}, start);
    }
    if (check_kw("print")) {
      advance();
      expect(TokenKind::Punct, "(");
      Expr value = parse_expr();
      expect(TokenKind::Punct, ")");
      return parse_py_simple_end(Print{std::move(value)}, start);
    }
    if (check_kind(TokenKind::Identifier) && check(TokenKind::Operator, "=", 1)) {
      std::string target = advance().text;
      advance();
      Expr value = parse_expr();
      return parse_py_simple_end(Assign{std::move(target), std::move(value)}, start);
    }
    Expr e = parse_expr();
    return parse_py_simple_end(ExprStmt{std::move(e)}, start);
  }

  Stmt parse_py_if() {
    const std::size_t start = here();
    advance();  // 'if' or 'elif'
    Expr cond = parse_expr();
    If node{std::move(cond), parse_py_suite(), std::nullopt};
    if (check_kw("elif")) {
      Block b;
      b.stmts.push_back(parse_py_if());
      node.else_block = std::move(b);
    } else if (check_kw("else")) {
      advance();
      node.else_block = parse_py_suite();
    }
    return Stmt{std::move(node), span_from(start)};
  }
};

}  // namespace

SyntaxTree parse(std::span<const Token> tokens, Lang lang) { return Parser(tokens, lang).run(); }

SyntaxTree parse_source(std::string_view source, Lang lang) {
  const std::vector<Token> tokens = tokenize(source, lang);
  return parse(tokens, lang);
}

}  // namespace gencode::ir
