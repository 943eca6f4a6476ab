#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "gencode/common/error.hpp"
#include "gencode/ir/token.hpp"
#include "gencode/textops/text_ops.hpp"

using namespace gencode;
using namespace gencode::ir;
using namespace gencode::textops;

namespace {

std::vector<std::string> lexemes(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) {
    if (!is_layout(t.kind)) out.push_back(t.text);
  }
  return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::size_t count_lexemes(const std::vector<Token>& toks) { return lexemes(toks).size(); }

// Local HTTP stand-in for a translation service.
class FakeTranslator {
 public:
  explicit FakeTranslator(bool malformed) {
    server_.Post("/bt", [malformed, this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      if (malformed) {
        res.set_content("not json", "text/plain");
        return;
      }
      auto body = nlohmann::json::parse(req.body);
      std::string text = body["text"].get<std::string>();
      const auto at = text.find("total");
      if (at != std::string::npos) text.replace(at, 5, "whole");
      res.set_content(nlohmann::json{{"text", text}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeTranslator() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/bt"; }
  std::atomic<int> hits{0};

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

int closed_port() {
  httplib::Server s;
  return s.bind_to_any_port("127.0.0.1");  // released when `s` goes away
}

}  // namespace

TEST(TextOps, NamesRoundTrip) {
  for (auto k : kAllTextOpKinds) EXPECT_EQ(parse_text_op_kind(text_op_kind_name(k)), k);
  EXPECT_FALSE(parse_text_op_kind("shout").has_value());
}

TEST(TextOps, ValidateRejectsBadSettings) {
  TextOpConfig cfg;
  cfg.rate = 0.0;
  EXPECT_THROW(validate(cfg), Error);
  cfg.rate = 1.5;
  EXPECT_THROW(validate(cfg), Error);
  cfg = TextOpConfig{};
  cfg.synonym_table = {{"x", {"not an ident"}}};
  EXPECT_THROW(validate(cfg), Error);
  cfg = TextOpConfig{};
  cfg.bt_max_in_flight = 0;
  EXPECT_THROW(validate(cfg), Error);
}

TEST(TextOps, EmptyInputIsDataError) {
  try {
    apply_text_op(TextOpKind::RandomSwap, {}, Lang::JavaLite, TextOpConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "EmptyInput");
    EXPECT_EQ(e.family(), ErrorFamily::Data);
  }
}

TEST(TextOps, RandomSwapPreservesTokenMultiset) {
  for (const auto& [src, lang] : fixtures::all_sources()) {
    const auto toks = tokenize(src, lang);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      TextOpConfig cfg;
      cfg.seed = seed;
      cfg.rate = 0.3;
      const auto out = apply_text_op(TextOpKind::RandomSwap, toks, lang, cfg);
      EXPECT_EQ(sorted(lexemes(out)), sorted(lexemes(toks)));
    }
  }
}

TEST(TextOps, RandomSwapAlwaysChangesMultiLineText) {
  for (const auto& [src, lang] : fixtures::all_sources()) {
    const auto toks = tokenize(src, lang);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      TextOpConfig cfg;
      cfg.seed = seed;
      EXPECT_NE(detokenize(apply_text_op(TextOpKind::RandomSwap, toks, lang, cfg)), src) << seed;
    }
  }
  const auto same = tokenize("x = 1\nx = 1\n", Lang::PyLite);
  EXPECT_EQ(apply_text_op(TextOpKind::RandomSwap, same, Lang::PyLite, TextOpConfig{}), same);
}

TEST(TextOps, RandomSwapMovesWholeLines) {
  const std::string src = "int f() {\n  int a = 1;\n  int b = 2;\n  return a + b;\n}\n";
  const auto toks = tokenize(src, Lang::JavaLite);
  TextOpConfig cfg;
  cfg.seed = 3;
  const std::string out = detokenize(apply_text_op(TextOpKind::RandomSwap, toks, Lang::JavaLite, cfg));
  EXPECT_NE(out, src);
  for (const char* line : {"int f() {", "int a = 1;", "int b = 2;", "return a + b;", "}"}) {
    EXPECT_NE(out.find(line), std::string::npos) << out;
  }
}

TEST(TextOps, RandomDeletionRemovesCeilOfRate) {
  const auto toks = tokenize(fixtures::kRichJava, Lang::JavaLite);
  TextOpConfig cfg;
  cfg.rate = 0.2;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.seed = seed;
    const auto out = apply_text_op(TextOpKind::RandomDeletion, toks, Lang::JavaLite, cfg);
    const std::size_t keep = static_cast<std::size_t>(std::ceil(0.8 * static_cast<double>(toks.size()) - 1e-9));
    EXPECT_EQ(out.size(), keep);
    // Survivors keep their relative order.
    const auto before = lexemes(toks);
    const auto after = lexemes(out);
    std::size_t j = 0;
    for (std::size_t i = 0; i < before.size() && j < after.size(); ++i) j += before[i] == after[j];
    EXPECT_EQ(j, after.size());
  }
}

TEST(TextOps, RandomInsertionDuplicatesExistingLexemes) {
  const auto toks = tokenize(fixtures::kEvenPython, Lang::PyLite);
  TextOpConfig cfg;
  cfg.seed = 5;
  const auto out = apply_text_op(TextOpKind::RandomInsertion, toks, Lang::PyLite, cfg);
  const auto base = lexemes(toks);
  const std::size_t expected_extra =
      static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(base.size()) - 1e-9));
  EXPECT_EQ(count_lexemes(out), base.size() + expected_extra);
  for (const auto& l : lexemes(out)) {
    EXPECT_NE(std::find(base.begin(), base.end(), l), base.end()) << l;
  }
}

TEST(TextOps, SynonymReplacementUsesTable) {
  const auto toks = tokenize("int f(int count) { return count + 1; }", Lang::JavaLite);
  TextOpConfig cfg;
  cfg.rate = 1.0;
  cfg.synonym_table = {{"count", {"tally"}}};
  const auto out = apply_text_op(TextOpKind::SynonymReplacement, toks, Lang::JavaLite, cfg);
  EXPECT_EQ(detokenize(out), "int f(int tally) { return tally + 1; }");
  cfg.synonym_table.clear();
  EXPECT_EQ(apply_text_op(TextOpKind::SynonymReplacement, toks, Lang::JavaLite, cfg), toks);
}

TEST(TextOps, DefaultSynonymTableIsValid) {
  TextOpConfig cfg;
  EXPECT_FALSE(cfg.synonym_table.empty());
  EXPECT_NO_THROW(validate(cfg));
}

TEST(TextOps, SameSeedSameOutput) {
  const auto toks = tokenize(fixtures::kRichPython, Lang::PyLite);
  TextOpConfig cfg;
  cfg.seed = 42;
  for (auto k : kAllTextOpKinds) {
    EXPECT_EQ(apply_text_op(k, toks, Lang::PyLite, cfg), apply_text_op(k, toks, Lang::PyLite, cfg));
  }
}

TEST(BackTranslation, StubRoundTripIsPartwise) {
  EXPECT_EQ(stub_round_trip("zzz_unknown"), "zzz_unknown");
  const std::string once = stub_round_trip("total_count");
  EXPECT_EQ(std::count(once.begin(), once.end(), '_'), 1);
}

TEST(BackTranslation, StubOnlyTouchesIdentifiers) {
  const std::string src = "int f(int total) { return total + 7; }";
  const std::string out = back_translate(src, Lang::JavaLite, TextOpConfig{});
  const auto a = tokenize(src, Lang::JavaLite);
  const auto b = tokenize(out, Lang::JavaLite);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].kind, b[i].kind);
    if (a[i].kind != TokenKind::Identifier) EXPECT_EQ(a[i].text, b[i].text);
  }
}

TEST(BackTranslation, UsesEndpointWhenConfigured) {
  FakeTranslator server(false);
  TextOpConfig cfg;
  cfg.bt_endpoint = server.url();
  cfg.bt_stub = false;
  EXPECT_EQ(back_translate("int total = 1;", Lang::JavaLite, cfg), "int whole = 1;");
  EXPECT_EQ(server.hits.load(), 1);
}

TEST(BackTranslation, MalformedReplyIsScorerError) {
  FakeTranslator server(true);
  TextOpConfig cfg;
  cfg.bt_endpoint = server.url();
  try {
    back_translate("int total = 1;", Lang::JavaLite, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "MalformedResponse");
    EXPECT_EQ(e.family(), ErrorFamily::Scorer);
  }
}

TEST(BackTranslation, UnreachableFallsBackToStubOrThrows) {
  TextOpConfig cfg;
  cfg.bt_endpoint = "http://127.0.0.1:" + std::to_string(closed_port()) + "/bt";
  cfg.bt_timeout_ms = 500;
  const std::string src = "int total = 1;";
  EXPECT_EQ(back_translate(src, Lang::JavaLite, cfg),
            back_translate(src, Lang::JavaLite, TextOpConfig{}));
  cfg.bt_stub = false;
  try {
    back_translate(src, Lang::JavaLite, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "BtUnreachable");
  }
  cfg.bt_endpoint = "ftp://nowhere";
  EXPECT_THROW(back_translate(src, Lang::JavaLite, cfg), Error);
}
