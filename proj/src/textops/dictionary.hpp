#pragma once

#include <string>
#include <unordered_map>

namespace gencode::textops::detail {

// English -> pivot and pivot -> English. Several English words share a pivot,
// so the round trip is lossy.
struct Dictionary {
  std::unordered_map<std::string, std::string> forward;
  std::unordered_map<std::string, std::string> backward;
};

const Dictionary& stub_dictionary();

}  // namespace gencode::textops::detail
