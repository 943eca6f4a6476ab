#include "gencode/scorer/features.hpp"

#include <map>
#include <string>

#include "gencode/common/error.hpp"
#include "gencode/common/hash.hpp"

namespace gencode::scorer {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

FeatureVector featurize(std::span<const ir::Token> tokens, std::size_t dim) {
  if (!is_power_of_two(dim)) {
    throw Error(ErrorFamily::Usage, "InvalidConfig", "feature dimension must be a power of two");
  }
  const std::uint64_t mask = dim - 1;
  std::map<std::uint32_t, double> counts;
  const std::string* prev = nullptr;
  std::string key;
  for (const ir::Token& t : tokens) {
    if (ir::is_layout(t.kind)) continue;
    key = "u\x1f";
    key += t.text;
    counts[static_cast<std::uint32_t>(fnv1a64(key) & mask)] += 1.0;
    if (prev != nullptr) {
      key = "b\x1f";
      key += *prev;
      key += '\x1f';
      key += t.text;
      counts[static_cast<std::uint32_t>(fnv1a64(key) & mask)] += 1.0;
    }
    prev = &t.text;
  }
  FeatureVector fv;
  fv.dim = dim;
  fv.entries.assign(counts.begin(), counts.end());
  return fv;
}

}  // namespace gencode::scorer
