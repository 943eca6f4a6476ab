#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <vector>

#include "gencode/ir/token.hpp"

namespace gencode::ir {

namespace {

constexpr std::array<std::string_view, 15> kJavaKeywords = {
    "int",    "boolean", "String", "void",  "if",     "else", "for",  "while",
    "switch", "case",    "default", "return", "break", "true", "false"};

constexpr std::array<std::string_view, 16> kPyKeywords = {
    "def",   "if",  "elif", "else", "for",  "in",   "while", "return",
    "pass",  "break", "and", "or",  "not",  "True", "False", "print"};

constexpr std::array<std::string_view, 15> kJavaOperators = {
    "==", "!=", "<=", ">=", "&&", "||", "+", "-", "*", "/", "%", "=", "<", ">", "!"};

constexpr std::array<std::string_view, 12> kPyOperators = {
    "==", "!=", "<=", ">=", "//", "+", "-", "*", "%", "=", "<", ">"};

constexpr std::string_view kJavaPunct = "(){},;:.";
constexpr std::string_view kPyPunct = "(),:";

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view word) {
  return std::find(set.begin(), set.end(), word) != set.end();
}

class Lexer {
 public:
  Lexer(std::string_view src, Lang lang, bool lenient)
      : src_(src), lang_(lang), lenient_(lenient) {}

  std::vector<Token> run() {
    if (lang_ == Lang::PyLite) {
      lex_python();
    } else {
      lex_java();
    }
    if (!tokens_.empty()) {
      tokens_.back().trailing = std::move(trivia_);
    }
    return std::move(tokens_);
  }

 private:
  std::string_view src_;
  Lang lang_;
  bool lenient_;
  std::size_t pos_ = 0;
  std::string trivia_;
  std::vector<Token> tokens_;

  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void emit(TokenKind kind, std::size_t start, std::size_t len) {
    Token tok;
    tok.kind = kind;
    tok.text = std::string(src_.substr(start, len));
    tok.offset = start;
    tok.length = len;
    tok.leading = std::move(trivia_);
    trivia_.clear();
    tokens_.push_back(std::move(tok));
  }

  void emit_layout(TokenKind kind) {
    Token tok;
    tok.kind = kind;
    tok.offset = pos_;
    tok.length = 0;
    tok.leading = std::move(trivia_);
    trivia_.clear();
    tokens_.push_back(std::move(tok));
  }

  void fail(std::size_t at, const std::string& message) { throw LexError(at, message); }

  // Illegal byte (or whole UTF-8 sequence) at pos_.
  void illegal() {
    if (!lenient_) {
      fail(pos_, "illegal character '" + std::string(1, peek()) + "'");
    }
    std::size_t len = 1;
    const auto lead = static_cast<unsigned char>(peek());
    if (lead >= 0xC0) {
      while (pos_ + len < src_.size() &&
             (static_cast<unsigned char>(src_[pos_ + len]) & 0xC0) == 0x80) {
        ++len;
      }
    }
    emit(TokenKind::Punct, pos_, len);
    pos_ += len;
  }

  void lex_string(char quote) {
    const std::size_t start = pos_;
    ++pos_;
    while (!at_end() && peek() != quote && peek() != '\n') {
      if (peek() == '\\' && pos_ + 1 < src_.size()) ++pos_;
      ++pos_;
    }
    if (at_end() || peek() != quote) {
      if (!lenient_) fail(start, "unterminated string literal");
      emit(TokenKind::StringLiteral, start, pos_ - start);
      return;
    }
    ++pos_;
    emit(TokenKind::StringLiteral, start, pos_ - start);
  }

  // Shared lexeme recognition; returns false if nothing matched at pos_.
  bool lex_lexeme() {
    const char c = peek();
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (!at_end() && is_ident_char(peek())) ++pos_;
      const std::string_view word = src_.substr(start, pos_ - start);
      const bool kw = lang_ == Lang::JavaLite ? contains(kJavaKeywords, word)
                                              : contains(kPyKeywords, word);
      emit(kw ? TokenKind::Keyword : TokenKind::Identifier, start, pos_ - start);
      return true;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      const std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
      emit(TokenKind::IntLiteral, start, pos_ - start);
      return true;
    }
    if (c == '"' || (c == '\'' && lang_ == Lang::PyLite)) {
      lex_string(c);
      return true;
    }
    const std::string_view rest = src_.substr(pos_);
    auto try_ops = [&](const auto& ops) {
      for (std::string_view op : ops) {
        if (rest.starts_with(op)) {
          emit(TokenKind::Operator, pos_, op.size());
          pos_ += op.size();
          return true;
        }
      }
      return false;
    };
    if (lang_ == Lang::JavaLite ? try_ops(kJavaOperators) : try_ops(kPyOperators)) {
      return true;
    }
    const std::string_view punct = lang_ == Lang::JavaLite ? kJavaPunct : kPyPunct;
    if (punct.find(c) != std::string_view::npos) {
      emit(TokenKind::Punct, pos_, 1);
      ++pos_;
      return true;
    }
    return false;
  }

  void lex_java() {
    while (!at_end()) {
      const char c = peek();
      if (c == '\n') {
        emit(TokenKind::Newline, pos_, 1);
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        trivia_.push_back(c);
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') trivia_.push_back(src_[pos_++]);
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t start = pos_;
        const std::size_t close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
          if (!lenient_) fail(start, "unterminated block comment");
          trivia_.append(src_.substr(pos_));
          pos_ = src_.size();
        } else {
          trivia_.append(src_.substr(pos_, close + 2 - pos_));
          pos_ = close + 2;
        }
      } else if (!lex_lexeme()) {
        illegal();
      }
    }
  }

  void lex_python() {
    std::vector<std::size_t> indents{0};
    int paren_depth = 0;
    bool line_start = true;
    while (!at_end()) {
      if (line_start && paren_depth == 0) {
        line_start = false;
        // Measure indentation; blank and comment-only lines are pure trivia.
        const std::size_t line_begin = pos_;
        std::size_t width = 0;
        while (peek() == ' ' || peek() == '\t') {
          if (peek() == '\t' && !lenient_) fail(pos_, "tab in indentation");
          ++width;
          ++pos_;
        }
        if (at_end() || peek() == '\n' || peek() == '#' || peek() == '\r') {
          trivia_.append(src_.substr(line_begin, pos_ - line_begin));
          while (!at_end() && peek() != '\n') trivia_.push_back(src_[pos_++]);
          if (!at_end()) trivia_.push_back(src_[pos_++]);
          line_start = true;
          continue;
        }
        trivia_.append(src_.substr(line_begin, pos_ - line_begin));
        if (width > indents.back()) {
          indents.push_back(width);
          emit_layout(TokenKind::Indent);
        } else {
          while (width < indents.back()) {
            indents.pop_back();
            emit_layout(TokenKind::Dedent);
          }
          if (width != indents.back()) {
            if (!lenient_) fail(pos_, "inconsistent dedent");
            indents.push_back(width);
          }
        }
        continue;
      }
      const char c = peek();
      if (c == '\n') {
        if (paren_depth > 0) {
          trivia_.push_back(c);
        } else {
          emit(TokenKind::Newline, pos_, 1);
          line_start = true;
        }
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        trivia_.push_back(c);
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') trivia_.push_back(src_[pos_++]);
      } else if (c == '\\' && peek(1) == '\n') {
        trivia_.append("\\\n");
        pos_ += 2;
      } else if (lex_lexeme()) {
        const std::string& t = tokens_.back().text;
        if (tokens_.back().kind == TokenKind::Punct) {
          if (t == "(") ++paren_depth;
          if (t == ")" && paren_depth > 0) --paren_depth;
        }
      } else {
        illegal();
      }
    }
    // Close the last logical line and any open blocks.
    const bool has_content =
        std::any_of(tokens_.begin(), tokens_.end(), [](const Token& t) { return !is_layout(t.kind); });
    if (has_content && tokens_.back().kind != TokenKind::Newline &&
        tokens_.back().kind != TokenKind::Dedent) {
      emit_layout(TokenKind::Newline);
    }
    while (indents.size() > 1) {
      indents.pop_back();
      emit_layout(TokenKind::Dedent);
    }
  }
};

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "Identifier";
    case TokenKind::Keyword: return "Keyword";
    case TokenKind::IntLiteral: return "IntLiteral";
    case TokenKind::StringLiteral: return "StringLiteral";
    case TokenKind::Operator: return "Operator";
    case TokenKind::Punct: return "Punct";
    case TokenKind::Newline: return "Newline";
    case TokenKind::Indent: return "Indent";
    case TokenKind::Dedent: return "Dedent";
  }
  return "?";
}

bool is_layout(TokenKind kind) {
  return kind == TokenKind::Newline || kind == TokenKind::Indent || kind == TokenKind::Dedent;
}

std::vector<Token> tokenize(std::string_view source, Lang lang) {
  return Lexer(source, lang, false).run();
}

std::vector<Token> tokenize_lenient(std::string_view source, Lang lang) {
  return Lexer(source, lang, true).run();
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (const Token& t : tokens) {
    out += t.leading;
    out += t.text;
    out += t.trailing;
  }
  return out;
}

}  // namespace gencode::ir
