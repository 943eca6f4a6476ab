#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "gencode/app/checkpoint.hpp"
#include "gencode/app/commands.hpp"
#include "gencode/app/config.hpp"
#include "gencode/app/dataset.hpp"
#include "gencode/app/manifest.hpp"
#include "gencode/common/error.hpp"
#include "gencode/experiments/corpus.hpp"

namespace fs = std::filesystem;
using namespace gencode;
using namespace gencode::app;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gencode_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(GENCODE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

const char* kLine0 =
    R"({"id":"a","lang":"java","code":"int f(int n) { return n; }","label":0,"io_pairs":[{"args":[3],"expected":"=> 3"}]})";
const char* kLine1 = R"({"id":"b","lang":"python","code":"def f(n):\n    return n\n","label":1})";

}  // namespace

TEST(Dataset, ParsesAndRoundTrips) {
  std::istringstream in(std::string(kLine0) + "\n\n" + kLine1 + "\n");
  const auto progs = parse_dataset(in);
  ASSERT_EQ(progs.size(), 2u);
  EXPECT_EQ(progs[0].lang, ir::Lang::JavaLite);
  EXPECT_EQ(progs[1].lang, ir::Lang::PyLite);
  ASSERT_EQ(progs[0].io_pairs.size(), 1u);
  EXPECT_EQ(progs[0].io_pairs[0].expected, "=> 3");
  std::istringstream again(dataset_jsonl(progs));
  EXPECT_EQ(parse_dataset(again), progs);
}

TEST(Dataset, ReportsErrors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_dataset(in);
  };
  EXPECT_EQ(error_code([&] { parse(std::string(kLine0) + "\n{oops\n"); }), "MalformedLine");
  try {
    parse(std::string(kLine0) + "\n" + R"({"id":"c","lang":"cobol","code":"x","label":1})");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_EQ(error_code([&] { parse(std::string(kLine0) + "\n" + kLine0); }), "DuplicateId");
  EXPECT_EQ(error_code([&] { parse(R"({"id":"a","lang":"java","code":"x","label":2})"); }),
            "SparseLabels");
  EXPECT_EQ(error_code([&] { parse(R"({"id":"a","lang":"java","label":0})"); }), "MalformedLine");
  EXPECT_EQ(error_code([] { ingest_dataset("/nonexistent/file.jsonl"); }), "FileNotFound");
}

TEST(Checkpoint, RoundTripsBitExactly) {
  scorer::Hyper h;
  h.init_scale = 0.3;
  h.seed = 99;
  auto m = scorer::make_model(4, 64, h);
  scorer::FeatureVector x;
  x.dim = 64;
  x.entries = {{3, 1.0}, {9, 2.0}};
  scorer::train_step_inplace(m, std::vector<scorer::LabeledFeatures>{{x, 2}});
  const std::string bytes = encode_checkpoint(m);
  EXPECT_EQ(bytes.substr(0, 4), "GCF1");
  EXPECT_EQ(decode_checkpoint(bytes), m);
  const auto dir = scratch_dir("ckpt");
  save_checkpoint(m, (dir / "m.gcf").string());
  EXPECT_EQ(load_checkpoint((dir / "m.gcf").string()), m);
}

TEST(Checkpoint, RejectsDamage) {
  const auto m = scorer::make_model(2, 16, scorer::Hyper{});
  std::string bytes = encode_checkpoint(m);
  EXPECT_EQ(error_code([&] { decode_checkpoint("XXXX" + bytes.substr(4)); }), "BadCheckpoint");
  EXPECT_EQ(error_code([&] { decode_checkpoint(bytes.substr(0, bytes.size() - 3)); }), "BadCheckpoint");
  EXPECT_EQ(error_code([&] { decode_checkpoint(bytes + "z"); }), "BadCheckpoint");
  std::string v2 = bytes;
  v2[4] = 2;
  EXPECT_EQ(error_code([&] { decode_checkpoint(v2); }), "VersionMismatch");
}

TEST(Config, StrictParsingAndCanonicalForm) {
  const auto c = config_from_json(nlohmann::json::parse(
      R"({"seed": 4, "epochs": 7, "strategy": "min-loss", "operators": ["plus_zero", "random_swap"],
          "text": {"rate": 0.2}, "study": {"stage": "mid"}, "corpus": {"langs": "java"}})"));
  EXPECT_EQ(c.seed, 4u);
  EXPECT_EQ(c.train.epochs, 7u);
  EXPECT_EQ(c.train.selection.strategy, selection::Strategy::MinLoss);
  EXPECT_EQ(c.train.operators.size(), 2u);
  EXPECT_EQ(c.stage, experiments::Stage::Mid);
  EXPECT_EQ(c.corpus.langs, experiments::LangMix::Java);
  EXPECT_EQ(config_to_json(config_from_json(config_to_json(c))), config_to_json(c));

  for (const char* bad : {R"({"epoch": 3})", R"({"epochs": "three"})", R"({"strategy": "best"})",
                          R"({"operators": ["original"]})", R"({"text": {"speed": 1}})",
                          R"({"external_scorer": {}})"}) {
    try {
      config_from_json(nlohmann::json::parse(bad));
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.family(), ErrorFamily::Usage) << bad;
    }
  }
  EXPECT_TRUE(config_from_json(nlohmann::json::parse(R"({"strategy": "no-aug"})")).no_aug);
}

TEST(Config, EnvironmentSuppliesBackTranslationUrl) {
  ::setenv("GENCODE_BT_URL", "http://127.0.0.1:9/bt", 1);
  RunConfig c;
  apply_environment(c);
  EXPECT_EQ(c.train.text.bt_endpoint, "http://127.0.0.1:9/bt");
  c.train.text.bt_endpoint = "http://other/";
  apply_environment(c);
  EXPECT_EQ(c.train.text.bt_endpoint, "http://other/");
  ::unsetenv("GENCODE_BT_URL");
}

TEST(Manifest, HashesConfigAndHasNoClock) {
  Manifest m;
  m.command = "train";
  m.config = config_to_json(RunConfig{});
  m.seed = 3;
  m.artifacts["report.json"] = hash_hex("{}");
  const auto j = manifest_to_json(m);
  EXPECT_EQ(j, manifest_to_json(m));
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["config_hash"], hash_hex(m.config.dump()));
  EXPECT_EQ(hash_hex("abc").size(), 16u);
  for (const char* key : {"timestamp", "created", "date", "host"}) EXPECT_FALSE(j.contains(key));
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(exit_code(ErrorFamily::Usage), 2);
  EXPECT_EQ(exit_code(ErrorFamily::Data), 3);
  EXPECT_EQ(exit_code(ErrorFamily::Scorer), 4);
  EXPECT_EQ(exit_code(ErrorFamily::Internal), 1);
}

TEST(Cli, UsageAndDataErrors) {
  EXPECT_EQ(cli(""), 2);
  EXPECT_EQ(cli("frobnicate"), 2);
  EXPECT_EQ(cli("train --train x"), 2);
  EXPECT_EQ(cli("--config /nonexistent.json gen-corpus --out /tmp/x"), 2);
  EXPECT_EQ(cli("train --train /nonexistent/a.jsonl --test /nonexistent/b.jsonl --out /tmp/gencode_x"), 3);
  const auto dir = scratch_dir("cli_bad");
  spit(dir / "bad.jsonl", "{not json\n");
  EXPECT_EQ(cli("augment --data " + (dir / "bad.jsonl").string() + " --out " + (dir / "o").string()), 3);
}

TEST(Cli, ScorerFailureExitsFour) {
  const auto dir = scratch_dir("cli_scorer");
  ASSERT_EQ(cli("gen-corpus --classes 3 --per-class 7 --out " + dir.string()), 0);
  spit(dir / "cfg.json",
       R"({"epochs": 1, "repetitions": 1, "dim": 256, "robustness": false,
           "external_scorer": {"command": [")" + std::string(MOCK_SCORER_PATH) +
           R"(", "die-after", "3"], "timeout_ms": 2000}})");
  EXPECT_EQ(cli("--config " + (dir / "cfg.json").string() + " train --train " +
                (dir / "train.jsonl").string() + " --test " + (dir / "test.jsonl").string() +
                " --out " + (dir / "run").string()),
            4);
}

TEST(Cli, PipelineIsDeterministic) {
  const auto a = scratch_dir("pipe_a");
  const auto b = scratch_dir("pipe_b");
  for (const auto& d : {a, b}) {
    const std::string s = d.string();
    ASSERT_EQ(cli("--seed 5 gen-corpus --classes 3 --per-class 8 --out " + s + "/data"), 0);
    ASSERT_EQ(cli("--seed 5 train --train " + s + "/data/train.jsonl --test " + s +
                  "/data/test.jsonl --out " + s + "/run --epochs 2 --seeds 5 --dim 256 --provenance"),
              0);
    ASSERT_EQ(cli("--seed 5 train --strategy no-aug --train " + s + "/data/train.jsonl --test " + s +
                  "/data/test.jsonl --out " + s + "/base --epochs 2 --seeds 5 --dim 256"),
              0);
    ASSERT_EQ(cli("--seed 5 eval --model " + s + "/run/model_seed5.gcf --test " + s +
                  "/data/test.jsonl --out " + s + "/eval"),
              0);
    ASSERT_EQ(cli("augment --data " + s + "/data/test.jsonl --out " + s + "/aug"), 0);
    const int st = cli("stats " + s + "/run/report.json " + s + "/base/report.json --out " + s + "/stats");
    EXPECT_TRUE(st == 0 || st == 3) << st;  // identical accuracies give AllZeroDifferences
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), a);
    EXPECT_EQ(slurp(entry.path()), slurp(b / rel)) << rel;
    ++compared;
  }
  EXPECT_GT(compared, 10u);
  const auto manifest = nlohmann::json::parse(slurp(a / "run" / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 5);
  EXPECT_TRUE(manifest.contains("config_hash"));
  EXPECT_EQ(manifest["artifacts"]["report.json"], hash_hex(slurp(a / "run" / "report.json")));
  const auto eval = nlohmann::json::parse(slurp(a / "eval" / "eval.json"));
  EXPECT_TRUE(eval.contains("accuracy"));
}
