#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gencode/ir/token.hpp"

namespace gencode::textops {

// Token-level edits; outputs need not parse.
enum class TextOpKind {
  SynonymReplacement,
  RandomInsertion,
  RandomSwap,
  RandomDeletion,
  BackTranslation,
};

inline constexpr std::array<TextOpKind, 5> kAllTextOpKinds = {
    TextOpKind::SynonymReplacement, TextOpKind::RandomInsertion, TextOpKind::RandomSwap,
    TextOpKind::RandomDeletion, TextOpKind::BackTranslation};

std::string_view text_op_kind_name(TextOpKind kind);  // "random_swap", ...
std::optional<TextOpKind> parse_text_op_kind(std::string_view name);

// Default identifier -> natural-language word table for SynonymReplacement.
const std::map<std::string, std::vector<std::string>>& default_synonym_table();

struct TextOpConfig {
  double rate = 0.1;  // fraction of eligible units touched, in (0, 1]
  std::map<std::string, std::vector<std::string>> synonym_table = default_synonym_table();
  std::optional<std::string> bt_endpoint;  // http://host:port/path
  bool bt_stub = true;                     // offline dictionary round-trip
  std::string bt_pivot = "de";
  int bt_max_in_flight = 4;
  int bt_timeout_ms = 5000;
  std::uint64_t seed = 0;
};

// Throws Error(Usage, "InvalidConfig") on out-of-range settings.
void validate(const TextOpConfig& cfg);


// Throws Error(Data, "EmptyInput") for an empty sequence. BackTranslation may
// throw BtUnreachable / MalformedResponse.
std::vector<ir::Token> apply_text_op(TextOpKind kind, std::span<const ir::Token> tokens,
                                     ir::Lang lang, const TextOpConfig& cfg);

// Online when cfg.bt_endpoint is set (falling back to the stub on transport
// failure if cfg.bt_stub), otherwise the deterministic dictionary stub.
std::string back_translate(std::string_view source, ir::Lang lang, const TextOpConfig& cfg);

// Dictionary round-trip of one identifier, applied per underscore-separated
// part. Unknown parts are kept.
std::string stub_round_trip(std::string_view identifier);

}  // namespace gencode::textops
