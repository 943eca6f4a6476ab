#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gencode/common/error.hpp"
#include "gencode/ir/lang.hpp"

namespace gencode::ir {

enum class TokenKind {
  Identifier,
  Keyword,
  IntLiteral,
  StringLiteral,
  Operator,
  Punct,
  Newline,
  Indent,
  Dedent,
};

std::string_view token_kind_name(TokenKind kind);

// A lexeme plus the trivia (whitespace, comments) that precedes it. The last
// token of a stream also carries whatever trivia follows it, so
// detokenize(tokenize(s)) == s for any source containing at least one token.
struct Token {
  TokenKind kind = TokenKind::Punct;
  std::string text;
  std::size_t offset = 0;  // byte offset of `text` in the source
  std::size_t length = 0;  // == text.size() for tokens read from source
  std::string leading;
  std::string trailing;

  bool operator==(const Token&) const = default;
};

// Newline/Indent/Dedent carry layout only.
bool is_layout(TokenKind kind);

class LexError : public Error {
 public:
  LexError(std::size_t offset, const std::string& message)
      : Error(ErrorFamily::Data, "LexError",
              "lex error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Strict lexer. Throws LexError on illegal characters, unterminated strings
// and (PyLite) inconsistent indentation.
std::vector<Token> tokenize(std::string_view source, Lang lang);

// Never throws: illegal bytes become single-byte Punct tokens and broken
// indentation is treated as trivia. Used for syntax-broken candidates.
std::vector<Token> tokenize_lenient(std::string_view source, Lang lang);

std::string detokenize(std::span<const Token> tokens);

}  // namespace gencode::ir
