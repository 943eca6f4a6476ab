#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "gencode/common/error.hpp"
#include "gencode/ir/ast.hpp"
#include "gencode/ir/token.hpp"

namespace gencode::ir {

// The program uses a construct outside the supported subset.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found)
      : Error(ErrorFamily::Data, "ParseError",
              "parse error at offset " + std::to_string(offset) + ": expected " + expected +
                  ", found " + found),
        offset_(offset),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t offset_;
  std::string expected_;
  std::string found_;
};

SyntaxTree parse(std::span<const Token> tokens, Lang lang);

// tokenize + parse.
SyntaxTree parse_source(std::string_view source, Lang lang);

}  // namespace gencode::ir
