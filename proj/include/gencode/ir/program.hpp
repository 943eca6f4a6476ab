#pragma once

#include <string>
#include <vector>

#include "gencode/ir/lang.hpp"
#include "gencode/ir/value.hpp"

namespace gencode::ir {

struct IoPair {
  std::vector<Value> args;
  std::string expected;  // see observation()
  bool operator==(const IoPair&) const = default;
};

struct Program {
  std::string id;
  Lang lang = Lang::JavaLite;
  std::string content;
  int label = 0;
  std::vector<IoPair> io_pairs;

  bool operator==(const Program&) const = default;
};

}  // namespace gencode::ir
