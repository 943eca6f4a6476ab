#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "gencode/ir/ast.hpp"
#include "gencode/ir/program.hpp"
#include "gencode/ir/value.hpp"

namespace gencode::ir {

inline constexpr std::uint64_t kDefaultFuel = 100'000;
inline constexpr int kMaxCallDepth = 200;

enum class FaultKind { FuelExhausted, DivisionByZero, UnboundName, TypeFault };

std::string_view fault_kind_name(FaultKind kind);

struct RuntimeFault {
  FaultKind kind = FaultKind::TypeFault;
  std::string detail;

  // Faults compare by kind only; the detail text is diagnostic.
  bool operator==(const RuntimeFault& o) const { return kind == o.kind; }
};

struct ExecResult {
  std::variant<Value, RuntimeFault> outcome;
  std::string output;  // everything printed, one line per print
  std::uint64_t steps = 0;

  bool faulted() const { return std::holds_alternative<RuntimeFault>(outcome); }
};

// Runs the entry function (the last function in the unit) on `args` after
// evaluating globals. Each executed statement, loop test and call costs one
// unit of fuel. Never throws for runtime problems; they come back as faults.
ExecResult execute(const SyntaxTree& tree, std::span<const Value> args,
                   std::uint64_t fuel = kDefaultFuel);

// Parses program.content first; throws LexError/ParseError if it is outside
// the subset.
ExecResult execute(const Program& program, std::span<const Value> args,
                   std::uint64_t fuel = kDefaultFuel);

// True when the tree contains a print statement. Output of such programs is
// part of their observable behaviour.
bool prints_output(const SyntaxTree& tree);

// The text an io_pair's expected output is compared against: printed output
// (when `with_stdout`) followed by "=> <value>" or "!! <FaultKind>".
std::string observation(const ExecResult& result, Lang lang, bool with_stdout);

}  // namespace gencode::ir
