#include "gencode/app/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>

#include "gencode/app/checkpoint.hpp"
#include "gencode/app/dataset.hpp"
#include "gencode/app/manifest.hpp"
#include "gencode/experiments/pca.hpp"
#include "gencode/experiments/report.hpp"
#include "gencode/selection/search_space.hpp"

namespace gencode::app {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorFamily::Data, "FileNotFound", "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes artifacts and records their hashes for the manifest.
class ArtifactWriter {
 public:
  ArtifactWriter(const std::string& dir, std::string command, const RunConfig& cfg)
      : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorFamily::Data, "IoError", "cannot create " + dir + ": " + ec.message());
    manifest_.command = std::move(command);
    manifest_.config = config_to_json(cfg);
    manifest_.seed = cfg.seed;
  }

  void input(const std::string& name, const std::string& path) {
    inputs_[name] = hash_hex(read_file(path));
  }

  void write(const std::string& name, const std::string& bytes) {
    std::ofstream out(dir_ / name, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorFamily::Data, "IoError", "cannot write " + (dir_ / name).string());
    manifest_.artifacts[name] = hash_hex(bytes);
  }

  void finish() {
    json j = manifest_to_json(manifest_);
    j["inputs"] = inputs_;
    const std::string text = j.dump(2) + "\n";
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << text;
    if (!out) throw Error(ErrorFamily::Data, "IoError", "cannot write manifest");
  }

 private:
  fs::path dir_;
  Manifest manifest_;
  std::map<std::string, std::string> inputs_;
};

std::string seed_suffix(std::uint64_t seed) { return "seed" + std::to_string(seed); }

}  // namespace

int exit_code(ErrorFamily family) {
  switch (family) {
    case ErrorFamily::Usage: return 2;
    case ErrorFamily::Data: return 3;
    case ErrorFamily::Scorer: return 4;
    case ErrorFamily::Internal: return 1;
  }
  return 1;
}

void cmd_gen_corpus(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
  experiments::CorpusConfig cc = cfg.corpus;
  cc.seed = cfg.seed;
  const auto programs = experiments::generate_corpus(cc);
  const auto split = experiments::split_corpus(programs, cfg.test_fraction, cfg.seed);
  ArtifactWriter w(out_dir, "gen-corpus", cfg);
  w.write("train.jsonl", dataset_jsonl(split.train));
  w.write("test.jsonl", dataset_jsonl(split.test));
  w.finish();
  log << "train " << split.train.size() << ", test " << split.test.size() << " programs\n";
}

void cmd_augment(const RunConfig& cfg, const std::string& data_path, const std::string& out_dir,
                 std::ostream& log) {
  const auto programs = ingest_dataset(data_path);
  selection::SearchSpaceConfig sc;
  sc.operators = cfg.train.operators;
  sc.include_originals = cfg.train.selection.include_originals;
  sc.seed = cfg.seed;
  sc.text = cfg.train.text;
  const auto space = selection::build_search_space(programs, sc);
  std::string cands;
  for (const auto& c : space.candidates) {
    json j{{"id", c.id},
           {"origin", c.origin_id},
           {"operator", selection::operator_name(c.op)},
           {"lang", std::string(ir::lang_name(c.lang))},
           {"code", c.content},
           {"label", c.label}};
    cands += j.dump() + "\n";
  }
  std::string skips;
  for (const auto& s : space.skips) {
    json j{{"origin", s.origin_id}, {"operator", selection::operator_name(s.op)}, {"reason", s.reason}};
    skips += j.dump() + "\n";
  }
  ArtifactWriter w(out_dir, "augment", cfg);
  w.input("data", data_path);
  w.write("candidates.jsonl", cands);
  w.write("skips.jsonl", skips);
  w.finish();
  log << space.candidates.size() << " candidates, " << space.skips.size() << " skipped\n";
}

void cmd_train(const RunConfig& cfg, const std::string& train_path, const std::string& test_path,
               const std::string& out_dir, std::ostream& log) {
  const auto train = ingest_dataset(train_path);
  const auto test = ingest_dataset(test_path);
  const auto report = cfg.no_aug ? experiments::run_no_aug(train, test, cfg.train)
                                 : experiments::run_gencode(train, test, cfg.train);
  ArtifactWriter w(out_dir, "train", cfg);
  w.input("train", train_path);
  w.input("test", test_path);
  w.write("report.json", experiments::report_to_json(report).dump(2) + "\n");
  for (const auto& run : report.runs) {
    w.write("curve_" + seed_suffix(run.seed) + ".csv", experiments::curve_csv(run));
    w.write("model_" + seed_suffix(run.seed) + ".gcf", encode_checkpoint(run.model));
    if (cfg.train.record_provenance) {
      w.write("provenance_" + seed_suffix(run.seed) + ".jsonl", experiments::provenance_jsonl(run));
    }
  }
  w.finish();
  log << "accuracy " << report.mean_accuracy << " +- " << report.std_accuracy << " over "
      << report.runs.size() << " runs";
  if (report.mean_robustness) log << ", robustness " << *report.mean_robustness;
  log << "\n";
}

void cmd_eval(const RunConfig& cfg, const std::string& model_path, const std::string& test_path,
              const std::string& out_dir, std::ostream& log) {
  const auto model = load_checkpoint(model_path);
  const auto test = ingest_dataset(test_path);
  for (const auto& p : test) {
    if (p.label < 0 || static_cast<std::size_t>(p.label) >= model.classes) {
      throw Error(ErrorFamily::Data, "LabelOutOfRange", "label of " + p.id + " exceeds model classes");
    }
  }
  json result;
  result["accuracy"] = experiments::accuracy(model, experiments::featurize_programs(test, model.dim));
  const auto robust = experiments::build_natural_robustness_set(test, cfg.train.robustness_seed);
  result["robustness_accuracy"] =
      experiments::accuracy(model, experiments::featurize_programs(robust.programs, model.dim));
  result["robustness_unchanged"] = robust.unchanged_ids.size();
  try {
    result["confidence"] = experiments::mean_max_probability(model, std::span<const ir::Program>(test));
  } catch (const Error&) {
    result["confidence"] = nullptr;
  }
  ArtifactWriter w(out_dir, "eval", cfg);
  w.input("model", model_path);
  w.input("test", test_path);
  try {
    const auto projected = experiments::pca_project(experiments::embed_programs(model, test), 2);
    std::vector<experiments::LabeledPoint> points;
    for (std::size_t i = 0; i < test.size(); ++i) {
      points.push_back({projected.points[i][0], projected.points[i][1],
                        static_cast<std::size_t>(test[i].label)});
    }
    result["interclass_distance"] = experiments::interclass_distance(points);
    w.write("pca.csv", experiments::pca_csv(points));
  } catch (const Error&) {
    result["interclass_distance"] = nullptr;
  }
  w.write("eval.json", result.dump(2) + "\n");
  w.finish();
  log << result.dump() << "\n";
}

void cmd_study(const RunConfig& cfg, const std::string& train_path, const std::string& test_path,
               const std::string& out_dir, std::ostream& log) {
  const auto train = ingest_dataset(train_path);
  const auto test = ingest_dataset(test_path);
  const auto result = experiments::correlation_study(train, test, cfg.stage, study_config(cfg));
  ArtifactWriter w(out_dir, "study", cfg);
  w.input("train", train_path);
  w.input("test", test_path);
  w.write("study.json", experiments::study_to_json(result).dump(2) + "\n");
  w.finish();
  log << "pcc " << result.pcc << ", p " << result.p_value << "\n";
}

experiments::WilcoxonResult cmd_stats(const std::string& report_a, const std::string& report_b,
                                      const std::optional<std::string>& out_dir, std::ostream& log) {
  auto load = [](const std::string& path) {
    try {
      return json::parse(read_file(path));
    } catch (const json::exception& e) {
      throw Error(ErrorFamily::Data, "MalformedReport", path + ": " + e.what());
    }
  };
  const auto a = experiments::report_accuracies(load(report_a));
  const auto b = experiments::report_accuracies(load(report_b));
  const auto result = experiments::wilcoxon_signed_rank(a, b);
  const std::string text = experiments::wilcoxon_to_json(result).dump(2) + "\n";
  if (out_dir) {
    ArtifactWriter w(*out_dir, "stats", RunConfig{});
    w.input("a", report_a);
    w.input("b", report_b);
    w.write("stats.json", text);
    w.finish();
  }
  log << text;
  return result;
}

}  // namespace gencode::app
