#include "gencode/textops/text_ops.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "gencode/common/error.hpp"
#include "gencode/common/rng.hpp"

namespace gencode::textops {

using ir::Token;
using ir::TokenKind;

namespace {

constexpr std::array<std::pair<TextOpKind, std::string_view>, 5> kNames = {{
    {TextOpKind::SynonymReplacement, "synonym_replacement"},
    {TextOpKind::RandomInsertion, "random_insertion"},
    {TextOpKind::RandomSwap, "random_swap"},
    {TextOpKind::RandomDeletion, "random_deletion"},
    {TextOpKind::BackTranslation, "back_translation"},
}};

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

// ceil(x) that ignores floating noise just above an integer.
std::size_t ceil_count(double x) {
  return static_cast<std::size_t>(std::max(0.0, std::ceil(x - 1e-9)));
}

std::vector<Token> synonym_replacement(std::vector<Token> tokens, const TextOpConfig& cfg,
                                       Rng& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind == TokenKind::Identifier && cfg.synonym_table.count(tokens[i].text) != 0 &&
        !cfg.synonym_table.at(tokens[i].text).empty()) {
      eligible.push_back(i);
    }
  }
  if (eligible.empty()) return tokens;
  const std::size_t count =
      std::min(eligible.size(), std::max<std::size_t>(1, ceil_count(cfg.rate * eligible.size())));
  for (std::size_t pick : rng.sample_without_replacement(eligible.size(), count)) {
    Token& t = tokens[eligible[pick]];
    const auto& options = cfg.synonym_table.at(t.text);
    t.text = options[rng.index(options.size())];
    t.length = t.text.size();
  }
  return tokens;
}

std::vector<Token> random_insertion(std::vector<Token> tokens, const TextOpConfig& cfg, Rng& rng) {
  std::vector<Token> pool;
  for (const Token& t : tokens) {
    if (!ir::is_layout(t.kind)) pool.push_back(t);
  }
  if (pool.empty()) return tokens;
  const std::size_t count = std::max<std::size_t>(1, ceil_count(cfg.rate * pool.size()));
  for (std::size_t i = 0; i < count; ++i) {
    Token copy = pool[rng.index(pool.size())];
    copy.leading = " ";
    copy.trailing.clear();
    // Never after the last token, which owns the trailing trivia.
    const std::size_t at = rng.index(tokens.size());
    tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), std::move(copy));
  }
  return tokens;
}

std::vector<Token> random_swap(std::vector<Token> tokens, const TextOpConfig& cfg, Rng& rng) {
  // Each line's body runs from its first to its last non-layout token.
  struct Line {
    std::size_t begin;
    std::size_t end;  // exclusive
  };
  std::vector<Line> lines;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t j = i;
    while (j < tokens.size() && tokens[j].kind != TokenKind::Newline) ++j;
    std::size_t b = i;
    while (b < j && ir::is_layout(tokens[b].kind)) ++b;
    std::size_t e = j;
    while (e > b && ir::is_layout(tokens[e - 1].kind)) --e;
    if (b < e) lines.push_back(Line{b, e});
    i = j + 1;
  }
  if (lines.size() < 2) return tokens;
  const std::size_t swaps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(cfg.rate * lines.size() + 1e-9)));
  // Work on a list of line bodies, then splice back in order.
  std::vector<std::vector<Token>> bodies;
  for (const Line& l : lines) {
    bodies.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(l.begin),
                        tokens.begin() + static_cast<std::ptrdiff_t>(l.end));
  }
  auto same_text = [](const std::vector<Token>& x, const std::vector<Token>& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                      [](const Token& p, const Token& q) { return p.text == q.text; });
  };
  auto swap_once = [&] {
    // Swapping two identical lines (e.g. two closing braces) is a no-op.
    const std::size_t a = rng.index(bodies.size());
    std::vector<std::size_t> partners;
    for (std::size_t b = 0; b < bodies.size(); ++b) {
      if (!same_text(bodies[a], bodies[b])) partners.push_back(b);
    }
    if (!partners.empty()) std::swap(bodies[a], bodies[partners[rng.index(partners.size())]]);
  };
  const auto original = bodies;
  for (std::size_t s = 0; s < swaps; ++s) swap_once();
  // Later swaps can undo earlier ones.
  auto unchanged = [&] {
    for (std::size_t k = 0; k < bodies.size(); ++k) {
      if (!same_text(bodies[k], original[k])) return false;
    }
    return true;
  };
  for (std::size_t extra = 0; extra < bodies.size() && unchanged(); ++extra) swap_once();
  std::vector<Token> out;
  out.reserve(tokens.size());
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    out.insert(out.end(), tokens.begin() + static_cast<std::ptrdiff_t>(cursor),
               tokens.begin() + static_cast<std::ptrdiff_t>(lines[k].begin));
    out.insert(out.end(), bodies[k].begin(), bodies[k].end());
    cursor = lines[k].end;
  }
  out.insert(out.end(), tokens.begin() + static_cast<std::ptrdiff_t>(cursor), tokens.end());
  // Keep the stream's trailing trivia on whatever is now last.
  std::string trailing;
  for (Token& t : out) {
    trailing += t.trailing;
    t.trailing.clear();
  }
  out.back().trailing = std::move(trailing);
  return out;
}

std::vector<Token> random_deletion(std::vector<Token> tokens, const TextOpConfig& cfg, Rng& rng) {
  const std::size_t n = tokens.size();
  const std::size_t keep = std::max<std::size_t>(1, ceil_count((1.0 - cfg.rate) * n));
  if (keep >= n) return tokens;
  std::vector<bool> drop(n, false);
  for (std::size_t idx : rng.sample_without_replacement(n, n - keep)) drop[idx] = true;
  std::vector<Token> out;
  out.reserve(keep);
  std::string pending;
  std::string trailing;
  for (std::size_t i = 0; i < n; ++i) {
    trailing += tokens[i].trailing;
    tokens[i].trailing.clear();
    if (drop[i]) {
      // Whitespace survives so neighbours do not run together.
      for (char c : tokens[i].leading) {
        if (c == ' ' || c == '\n' || c == '\t') pending.push_back(c);
      }
      if (tokens[i].kind == TokenKind::Newline) pending += tokens[i].text;
      continue;
    }
    tokens[i].leading = pending + tokens[i].leading;
    pending.clear();
    out.push_back(std::move(tokens[i]));
  }
  out.back().trailing = pending + trailing;
  return out;
}

}  // namespace

std::string_view text_op_kind_name(TextOpKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<TextOpKind> parse_text_op_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

void validate(const TextOpConfig& cfg) {
  if (!(cfg.rate > 0.0 && cfg.rate <= 1.0)) {
    throw Error(ErrorFamily::Usage, "InvalidConfig", "text-op rate must be in (0, 1]");
  }
  for (const auto& [key, values] : cfg.synonym_table) {
    if (!valid_identifier(key)) {
      throw Error(ErrorFamily::Usage, "InvalidConfig", "synonym key '" + key + "' is not an identifier");
    }
    for (const auto& v : values) {
      if (!valid_identifier(v)) {
        throw Error(ErrorFamily::Usage, "InvalidConfig",
                    "synonym '" + v + "' is not an identifier");
      }
    }
  }
  if (cfg.bt_max_in_flight < 1 || cfg.bt_timeout_ms < 1) {
    throw Error(ErrorFamily::Usage, "InvalidConfig", "back-translation limits must be positive");
  }
}

const std::map<std::string, std::vector<std::string>>& default_synonym_table() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"count", {"amount", "number", "tally"}},
      {"cnt", {"amount", "number"}},
      {"total", {"sum", "whole", "aggregate"}},
      {"sum", {"total", "whole"}},
      {"acc", {"total", "pile"}},
      {"result", {"outcome", "answer"}},
      {"res", {"outcome", "answer"}},
      {"value", {"worth", "amount"}},
      {"val", {"worth", "amount"}},
      {"num", {"figure", "quantity"}},
      {"n", {"size", "limit"}},
      {"x", {"input", "item"}},
      {"i", {"index", "position"}},
      {"j", {"cursor", "position"}},
      {"k", {"step", "stride"}},
      {"best", {"top", "greatest"}},
      {"largest", {"greatest", "biggest"}},
      {"digit", {"figure", "numeral"}},
      {"rest", {"remainder", "leftover"}},
      {"prod", {"product", "yield"}},
      {"flag", {"marker", "signal"}},
      {"found", {"located", "seen"}},
      {"limit", {"bound", "ceiling"}},
      {"tmp", {"scratch", "holder"}},
      {"prev", {"former", "earlier"}},
      {"cur", {"present", "current"}},
      {"a", {"first", "left"}},
      {"b", {"second", "right"}},
      {"base", {"foundation", "radix"}},
      {"steps", {"moves", "stages"}},
  };
  return table;
}

std::vector<Token> apply_text_op(TextOpKind kind, std::span<const Token> tokens, ir::Lang lang,
                                 const TextOpConfig& cfg) {
  if (tokens.empty()) throw Error(ErrorFamily::Data, "EmptyInput", "text op on empty token sequence");
  validate(cfg);
  Rng rng(cfg.seed);
  std::vector<Token> work(tokens.begin(), tokens.end());
  switch (kind) {
    case TextOpKind::SynonymReplacement: return synonym_replacement(std::move(work), cfg, rng);
    case TextOpKind::RandomInsertion: return random_insertion(std::move(work), cfg, rng);
    case TextOpKind::RandomSwap: return random_swap(std::move(work), cfg, rng);
    case TextOpKind::RandomDeletion: return random_deletion(std::move(work), cfg, rng);
    case TextOpKind::BackTranslation: {
      const std::string text = back_translate(ir::detokenize(work), lang, cfg);
      std::vector<Token> out = ir::tokenize_lenient(text, lang);
      if (out.empty()) return work;
      return out;
    }
  }
  return work;
}

}  // namespace gencode::textops
