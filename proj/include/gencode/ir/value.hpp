#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "gencode/ir/lang.hpp"

namespace gencode::ir {

struct Unit {
  bool operator==(const Unit&) const = default;
};

// Integers are 64-bit and wrap on overflow (two's complement), in both
// languages. Division by INT64_MIN / -1 wraps to INT64_MIN.
struct Value {
  std::variant<Unit, std::int64_t, bool, std::string> data;

  Value() = default;
  Value(std::int64_t v) : data(v) {}           // NOLINT(implicit)
  Value(int v) : data(std::int64_t{v}) {}      // NOLINT(implicit)
  Value(bool v) : data(v) {}                   // NOLINT(implicit)
  Value(std::string v) : data(std::move(v)) {} // NOLINT(implicit)
  Value(const char* v) : data(std::string(v)) {}  // NOLINT(implicit)

  bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_text() const { return std::holds_alternative<std::string>(data); }
  bool is_unit() const { return std::holds_alternative<Unit>(data); }

  bool operator==(const Value&) const = default;
};

// How the language's print statement would show the value.
std::string render(const Value& value, Lang lang);

}  // namespace gencode::ir
