#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gencode/ir/interpreter.hpp"
#include "gencode/ir/parser.hpp"
#include "gencode/ir/printer.hpp"
#include "gencode/ir/scope.hpp"
#include "gencode/ir/token.hpp"

using namespace gencode;
using namespace gencode::ir;

namespace {

std::string run(const std::string& src, Lang lang, std::vector<Value> args = {},
                std::uint64_t fuel = kDefaultFuel) {
  const SyntaxTree tree = parse_source(src, lang);
  return observation(execute(tree, args, fuel), lang, true);
}

std::size_t count_kind(const std::vector<Token>& toks, TokenKind kind) {
  std::size_t n = 0;
  for (const auto& t : toks) n += t.kind == kind ? 1 : 0;
  return n;
}

}  // namespace

TEST(Lexer, RoundTripsTriviaExactly) {
  const std::string src = "// lead\nint f( int x ){\n\treturn x+1 ; /* c */\n}\n\n";
  EXPECT_EQ(detokenize(tokenize(src, Lang::JavaLite)), src);
  const std::string py = "# top\ndef f(x):\n    # inside\n    return x  +  1\n";
  EXPECT_EQ(detokenize(tokenize(py, Lang::PyLite)), py);
}

TEST(Lexer, PyIndentDedent) {
  const auto toks = tokenize("def f():\n  return 1\n", Lang::PyLite);
  EXPECT_EQ(count_kind(toks, TokenKind::Indent), 1u);
  EXPECT_EQ(count_kind(toks, TokenKind::Dedent), 1u);
}

TEST(Lexer, SpansPointIntoSource) {
  const std::string src = "int g() { return 42; }";
  for (const auto& t : tokenize(src, Lang::JavaLite)) {
    if (is_layout(t.kind)) continue;
    EXPECT_EQ(src.substr(t.offset, t.length), t.text);
  }
}

TEST(Lexer, RejectsIllegalCharacter) {
  EXPECT_THROW(tokenize("int f() { return 1 @ 2; }", Lang::JavaLite), LexError);
  EXPECT_THROW(tokenize("x = \"open", Lang::PyLite), LexError);
}

TEST(Lexer, LenientNeverThrows) {
  const std::string src = "int f() { return 1 @ 2; }";
  const auto toks = tokenize_lenient(src, Lang::JavaLite);
  EXPECT_EQ(detokenize(toks), src);
}

TEST(Parser, RejectsConstructsOutsideSubset) {
  EXPECT_THROW(parse_source("int f() { return x.y; }", Lang::JavaLite), Error);
  EXPECT_THROW(parse_source("def f(:\n    return 1\n", Lang::PyLite), ParseError);
}

TEST(Parser, FixtureShape) {
  const SyntaxTree tree = parse_source(fixtures::kEvenJava, Lang::JavaLite);
  ASSERT_EQ(tree.functions.size(), 1u);
  const auto& body = tree.functions[0].body.stmts;
  bool has_for = false;
  for (const auto& s : body) has_for = has_for || std::holds_alternative<For>(s.node);
  EXPECT_TRUE(has_for);
}

TEST(Printer, CanonicalFormIsFixpoint) {
  for (const auto& [src, lang] : fixtures::all_sources()) {
    const SyntaxTree tree = parse_source(src, lang);
    const std::string once = print(tree);
    EXPECT_EQ(print(parse_source(once, lang)), once) << src;
    EXPECT_EQ(canonicalize(tree), parse_source(once, lang));
  }
}

TEST(Printer, KeepsExplicitParensAndPrecedence) {
  const SyntaxTree t = parse_source("int f(int a) { return (a + 1) * 2 - a % 3; }", Lang::JavaLite);
  EXPECT_NE(print(t).find("(a + 1) * 2 - a % 3"), std::string::npos);
  const SyntaxTree p = parse_source("def f(a):\n    return not (a < 1) and a // 2 == 0\n", Lang::PyLite);
  EXPECT_EQ(run(print(p), Lang::PyLite, {Value(4)}), run("def f(a):\n    return not (a < 1) and a // 2 == 0\n", Lang::PyLite, {Value(4)}));
}

TEST(Interpreter, EvenFixturePrintsFiveEvens) {
  const SyntaxTree tree = parse_source(fixtures::kEvenJava, Lang::JavaLite);
  const ExecResult r = execute(tree, {});
  ASSERT_FALSE(r.faulted());
  EXPECT_EQ(r.output, "2\n4\n6\n8\n10\n");
  EXPECT_EQ(std::get<Value>(r.outcome), Value(5));
}

TEST(Interpreter, JavaIntegerSemantics) {
  EXPECT_EQ(run("int f() { return -7 / 2; }", Lang::JavaLite), "=> -3");
  EXPECT_EQ(run("int f() { return -7 % 2; }", Lang::JavaLite), "=> -1");
  EXPECT_EQ(run("int f() { return 9223372036854775807 + 1; }", Lang::JavaLite),
            "=> -9223372036854775808");
  EXPECT_EQ(run("int f() { return 1 / 0; }", Lang::JavaLite), "!! DivisionByZero");
}

TEST(Interpreter, PythonIntegerSemantics) {
  EXPECT_EQ(run("def f():\n    return -7 // 2\n", Lang::PyLite), "=> -4");
  EXPECT_EQ(run("def f():\n    return -7 % 2\n", Lang::PyLite), "=> 1");
  EXPECT_EQ(run("def f():\n    return 1 % 0\n", Lang::PyLite), "!! DivisionByZero");
}

TEST(Interpreter, StringsAndBooleans) {
  EXPECT_EQ(run("String f() { return \"a\" + 1 + true; }", Lang::JavaLite), "=> a1true");
  EXPECT_EQ(run("def f():\n    return 0 or \"x\"\n", Lang::PyLite), "=> x");
  EXPECT_EQ(run("def f():\n    return not 0\n", Lang::PyLite), "=> True");
  EXPECT_EQ(run("def f():\n    return 1 + \"a\"\n", Lang::PyLite), "!! TypeFault");
}

TEST(Interpreter, Faults) {
  EXPECT_EQ(run("int f() { while (true) { } }", Lang::JavaLite, {}, 1000), "!! FuelExhausted");
  EXPECT_EQ(run("int f(int n) { return f(n + 1); }", Lang::JavaLite, {Value(0)}), "!! FuelExhausted");
  EXPECT_EQ(run("def f():\n    return y\n", Lang::PyLite), "!! UnboundName");
  EXPECT_EQ(run("def f():\n    if False:\n        y = 1\n    return y\n", Lang::PyLite),
            "!! UnboundName");
  EXPECT_EQ(run("int f() { if (1) { return 1; } return 0; }", Lang::JavaLite), "!! TypeFault");
  EXPECT_EQ(run("int f() { int x = 1; }", Lang::JavaLite), "!! TypeFault");
}

TEST(Interpreter, SwitchFallthroughAndBreak) {
  const std::string src =
      "int f(int k) { int r = 0; switch (k) { case 1: r = r + 1; case 2: r = r + 10; break; "
      "default: r = 100; } return r; }";
  EXPECT_EQ(run(src, Lang::JavaLite, {Value(1)}), "=> 11");
  EXPECT_EQ(run(src, Lang::JavaLite, {Value(2)}), "=> 10");
  EXPECT_EQ(run(src, Lang::JavaLite, {Value(7)}), "=> 100");
}

TEST(Interpreter, GlobalsRunBeforeEntry) {
  EXPECT_EQ(run("int base = 40;\nint f() { return base + 2; }", Lang::JavaLite), "=> 42");
  EXPECT_EQ(run("base = 40\ndef f():\n    return base + 2\n", Lang::PyLite), "=> 42");
}

TEST(Interpreter, EntryIsLastFunction) {
  const std::string src = "def helper(a):\n    return a * 2\n\ndef main(n):\n    return helper(n) + 1\n";
  EXPECT_EQ(run(src, Lang::PyLite, {Value(5)}), "=> 11");
}

TEST(Scope, FreshNamesAvoidExistingIdentifiers) {
  const SyntaxTree tree = parse_source("int f(int var_0) { int var_1 = var_0; return var_1; }",
                                       Lang::JavaLite);
  EXPECT_EQ(fresh_name(tree, "var"), "var_2");
  EXPECT_TRUE(free_names(tree).empty());
  const SyntaxTree bad = parse_source("int f() { return ghost; }", Lang::JavaLite);
  EXPECT_EQ(free_names(bad), std::vector<std::string>{"ghost"});
}
