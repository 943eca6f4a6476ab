#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gencode/app/commands.hpp"
#include "gencode/app/config.hpp"

namespace {

// Flags that override the config file. Unset flags leave it alone.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
  std::optional<std::size_t> seeds;
  std::optional<std::size_t> epochs;
  std::optional<std::size_t> patience;
  std::optional<std::size_t> dim;
  std::optional<std::string> bt_url;
  std::optional<std::string> stage;
  std::optional<std::size_t> groups;
  std::optional<std::size_t> classes;
  std::optional<std::size_t> per_class;
  std::optional<std::string> langs;
  bool provenance = false;
  bool timing = false;
};

gencode::app::RunConfig resolve(const std::string& config_path, const Overrides& o) {
  using gencode::Error;
  using gencode::ErrorFamily;
  gencode::app::RunConfig cfg =
      config_path.empty() ? gencode::app::RunConfig{} : gencode::app::load_config(config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.strategy) {
    if (*o.strategy == "no-aug") {
      cfg.no_aug = true;
    } else if (auto s = gencode::selection::parse_strategy(*o.strategy)) {
      cfg.no_aug = false;
      cfg.train.selection.strategy = *s;
    } else {
      throw Error(ErrorFamily::Usage, "InvalidConfig", "unknown strategy " + *o.strategy);
    }
  }
  if (o.seeds) {
    cfg.train.repetitions = *o.seeds;
    cfg.train.seeds.clear();
    for (std::size_t i = 0; i < *o.seeds; ++i) cfg.train.seeds.push_back(cfg.seed + i);
  }
  if (o.epochs) cfg.train.epochs = *o.epochs;
  if (o.patience) cfg.train.early_stop_patience = *o.patience;
  if (o.dim) cfg.train.dim = *o.dim;
  if (o.bt_url) cfg.train.text.bt_endpoint = *o.bt_url;
  if (o.stage) {
    auto s = gencode::experiments::parse_stage(*o.stage);
    if (!s) throw Error(ErrorFamily::Usage, "InvalidConfig", "unknown stage " + *o.stage);
    cfg.stage = *s;
  }
  if (o.groups) cfg.study_groups = *o.groups;
  if (o.classes) cfg.corpus.classes = *o.classes;
  if (o.per_class) cfg.corpus.per_class = *o.per_class;
  if (o.langs) {
    if (*o.langs == "java") {
      cfg.corpus.langs = gencode::experiments::LangMix::Java;
    } else if (*o.langs == "python") {
      cfg.corpus.langs = gencode::experiments::LangMix::Python;
    } else if (*o.langs == "both") {
      cfg.corpus.langs = gencode::experiments::LangMix::Both;
    } else {
      throw Error(ErrorFamily::Usage, "InvalidConfig", "unknown langs " + *o.langs);
    }
  }
  if (o.provenance) cfg.train.record_provenance = true;
  if (o.timing) cfg.train.record_timing = true;
  gencode::app::apply_environment(cfg);
  gencode::experiments::validate(cfg.train);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gencode: loss-guided code data augmentation"};
  app.require_subcommand(1);
  std::string config_path;
  Overrides o;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "global seed");
  app.add_option("--bt-url", o.bt_url, "back-translation endpoint (default: $GENCODE_BT_URL)");

  std::string out_dir;
  std::string data;
  std::string train;
  std::string test;
  std::string model;
  std::string report_a;
  std::string report_b;

  auto* gen = app.add_subcommand("gen-corpus", "generate the synthetic benchmark");
  gen->add_option("--out", out_dir)->required();
  gen->add_option("--classes", o.classes);
  gen->add_option("--per-class", o.per_class);
  gen->add_option("--langs", o.langs, "java, python or both");

  auto* augment = app.add_subcommand("augment", "emit the search space as JSONL");
  augment->add_option("--data", data)->required();
  augment->add_option("--out", out_dir)->required();

  auto* trainc = app.add_subcommand("train", "train with GenCode selection or without augmentation");
  trainc->add_option("--train", train)->required();
  trainc->add_option("--test", test)->required();
  trainc->add_option("--out", out_dir)->required();
  trainc->add_option("--strategy", o.strategy, "max-loss, min-loss, random or no-aug");
  trainc->add_option("--seeds", o.seeds, "number of repetitions");
  trainc->add_option("--epochs", o.epochs);
  trainc->add_option("--patience", o.patience);
  trainc->add_option("--dim", o.dim, "feature dimension (power of two)");
  trainc->add_flag("--provenance", o.provenance, "record selected candidates per epoch");
  trainc->add_flag("--timing", o.timing, "record wall-clock per epoch");

  auto* eval = app.add_subcommand("eval", "accuracy, robustness, confidence and distance");
  eval->add_option("--model", model)->required();
  eval->add_option("--test", test)->required();
  eval->add_option("--out", out_dir)->required();

  auto* study = app.add_subcommand("study", "loss/accuracy correlation study");
  study->add_option("--train", train)->required();
  study->add_option("--test", test)->required();
  study->add_option("--out", out_dir)->required();
  study->add_option("--stage", o.stage, "early, mid or late");
  study->add_option("--groups", o.groups);
  study->add_option("--dim", o.dim);

  auto* stats = app.add_subcommand("stats", "Wilcoxon signed-rank over two reports");
  stats->add_option("a", report_a)->required();
  stats->add_option("b", report_b)->required();
  stats->add_option("--out", out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto cfg = resolve(config_path, o);
    if (*gen) {
      gencode::app::cmd_gen_corpus(cfg, out_dir, std::cout);
    } else if (*augment) {
      gencode::app::cmd_augment(cfg, data, out_dir, std::cout);
    } else if (*trainc) {
      gencode::app::cmd_train(cfg, train, test, out_dir, std::cout);
    } else if (*eval) {
      gencode::app::cmd_eval(cfg, model, test, out_dir, std::cout);
    } else if (*study) {
      gencode::app::cmd_study(cfg, train, test, out_dir, std::cout);
    } else if (*stats) {
      gencode::app::cmd_stats(report_a, report_b,
                              out_dir.empty() ? std::nullopt : std::optional<std::string>(out_dir),
                              std::cout);
    }
  } catch (const gencode::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return gencode::app::exit_code(e.family());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
