#pragma once

#include <cstdint>
#include <string>

#include "gencode/scorer/model.hpp"

namespace gencode::app {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// "GCF1", u32 version, u64 classes, u64 dim, u64 step count, hyperparameters,
// u8 has-moments, then row-major weights (and Adam moments) as little-endian
// doubles.
std::string encode_checkpoint(const scorer::ModelState& model);

// Throws Error(Data, "BadCheckpoint") or Error(Data, "VersionMismatch").
scorer::ModelState decode_checkpoint(const std::string& bytes);

void save_checkpoint(const scorer::ModelState& model, const std::string& path);
scorer::ModelState load_checkpoint(const std::string& path);

}  // namespace gencode::app
