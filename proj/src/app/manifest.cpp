#include "gencode/app/manifest.hpp"

#include <cstdio>

#include "gencode/common/hash.hpp"

namespace gencode::app {

std::string hash_hex(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

nlohmann::json manifest_to_json(const Manifest& m) {
  nlohmann::json j;
  j["tool"] = "gencode";
  j["version"] = kToolVersion;
  j["checkpoint_format"] = 1;
  j["command"] = m.command;
  j["seed"] = m.seed;
  j["config"] = m.config;
  j["config_hash"] = hash_hex(m.config.dump());
  j["artifacts"] = m.artifacts;
  return j;
}

}  // namespace gencode::app
