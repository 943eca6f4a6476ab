#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace gencode::app {

inline constexpr const char* kToolVersion = "0.1.0";

struct Manifest {
  std::string command;
  nlohmann::json config;  // canonical, fully resolved
  std::uint64_t seed = 0;
  std::map<std::string, std::string> artifacts;  // file name -> FNV-1a hex
};

std::string hash_hex(const std::string& bytes);

// No timestamps or host data, so equal inputs give equal manifests.
nlohmann::json manifest_to_json(const Manifest& m);

}  // namespace gencode::app
