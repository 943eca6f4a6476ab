#pragma once

#include <cstdint>
#include <string_view>

namespace gencode {

// 64-bit FNV-1a. Stable across platforms, used for feature hashing,
// seed derivation and config hashes.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace gencode
