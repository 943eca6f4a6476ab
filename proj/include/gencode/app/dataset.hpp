#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "gencode/ir/program.hpp"

namespace gencode::app {

// JSONL, one {"id", "lang", "code", "label", "io_pairs"?} object per line;
// io_pairs entries are {"args": [...], "expected": "..."}. Blank lines are
// skipped. Errors (all Data family): FileNotFound, MalformedLine (message
// carries the 1-based line number), DuplicateId, SparseLabels when the labels
// are not exactly 0..C-1.
std::vector<ir::Program> ingest_dataset(const std::string& path);
std::vector<ir::Program> parse_dataset(std::istream& in);

std::string dataset_jsonl(std::span<const ir::Program> programs);

}  // namespace gencode::app
