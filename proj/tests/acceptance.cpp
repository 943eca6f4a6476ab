// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [--only 1,2,...] [--allow-fail 8,...]
// Exit status is the number of failed criteria not listed in --allow-fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "gencode/app/checkpoint.hpp"
#include "gencode/app/commands.hpp"
#include "gencode/app/config.hpp"
#include "gencode/app/dataset.hpp"
#include "gencode/common/error.hpp"
#include "gencode/experiments/analysis.hpp"
#include "gencode/experiments/corpus.hpp"
#include "gencode/experiments/pca.hpp"
#include "gencode/experiments/report.hpp"
#include "gencode/experiments/stats.hpp"
#include "gencode/experiments/training.hpp"
#include "gencode/ir/interpreter.hpp"
#include "gencode/ir/parser.hpp"
#include "gencode/ir/printer.hpp"
#include "gencode/refactor/refactor.hpp"
#include "gencode/scorer/model.hpp"
#include "gencode/selection/search_space.hpp"
#include "gencode/selection/select.hpp"
#include "gencode/textops/text_ops.hpp"

namespace fs = std::filesystem;
using namespace gencode;
using namespace gencode::experiments;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned tolerances and budgets.
constexpr double kLnTol = 1e-9;
constexpr double kGradRelTol = 1e-4;
constexpr double kPearsonTol = 1e-12;
constexpr double kWilcoxonTol = 1e-10;
constexpr double kOrthoTol = 1e-8;
constexpr double kDistanceTol = 1e-10;
constexpr double kConfidenceTol = 1e-12;
constexpr double kSemanticBudgetS = 120.0;
constexpr double kStudyBudgetS = 600.0;
constexpr double kStudyAlpha = 0.01;
constexpr std::size_t kStudySeedsNeeded = 4;
// Shared by criteria 8-10: 700 programs split 500/200.
constexpr std::size_t kPerClass = 70;
constexpr double kTestFraction = 2.0 / 7.0;
constexpr std::size_t kDim = 4096;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

Split benchmark_split(std::uint64_t seed) {
  CorpusConfig cc;
  cc.per_class = kPerClass;
  cc.seed = seed;
  return split_corpus(generate_corpus(cc), kTestFraction, seed);
}

std::vector<std::string> lexemes(const std::vector<ir::Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) {
    if (!ir::is_layout(t.kind)) out.push_back(t.text);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ir::Program> semantic_corpus() {
  CorpusConfig cc;
  cc.classes = template_count();
  cc.per_class = (200 + cc.classes - 1) / cc.classes;
  cc.seed = 2024;
  auto all = generate_corpus(cc);
  all.resize(200);
  return all;
}

Verdict c1_semantic() {
  const auto t0 = Clock::now();
  const auto progs = semantic_corpus();
  std::size_t java = 0;
  std::size_t applied = 0;
  std::size_t failures = 0;
  std::set<refactor::RefactorKind> kinds_seen;
  for (const auto& p : progs) {
    java += p.lang == ir::Lang::JavaLite;
    const auto tree = ir::parse_source(p.content, p.lang);
    for (auto kind : refactor::kAllRefactorKinds) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto out = refactor::apply_refactor(kind, tree, seed);
        if (out.status != refactor::RewriteStatus::Applied) continue;
        ++applied;
        kinds_seen.insert(kind);
        for (const auto& io : p.io_pairs) {
          if (ir::observation(ir::execute(out.tree, io.args), p.lang, false) != io.expected) {
            ++failures;
            break;
          }
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool both = java > 0 && java < progs.size();
  return {failures == 0 && both && kinds_seen.size() == 18 && secs < kSemanticBudgetS,
          std::to_string(applied) + " rewrites, " + std::to_string(failures) + " mismatches, " +
              std::to_string(kinds_seen.size()) + " kinds, " + fmt(secs) + "s"};
}

Verdict c2_syntax() {
  const auto progs = semantic_corpus();
  std::size_t reparse_fail = 0;
  std::size_t checked = 0;
  std::size_t multiset_fail = 0;
  for (const auto& p : progs) {
    const auto tree = ir::parse_source(p.content, p.lang);
    for (auto kind : refactor::kAllRefactorKinds) {
      const auto out = refactor::apply_refactor(kind, tree, 1);
      if (out.status != refactor::RewriteStatus::Applied) continue;
      ++checked;
      try {
        if (ir::parse_source(ir::print(out.tree), p.lang) != out.tree) ++reparse_fail;
      } catch (const Error&) {
        ++reparse_fail;
      }
    }
    const auto toks = ir::tokenize(p.content, p.lang);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      textops::TextOpConfig cfg;
      cfg.seed = seed;
      const auto swapped = textops::apply_text_op(textops::TextOpKind::RandomSwap, toks, p.lang, cfg);
      if (lexemes(swapped) != lexemes(toks)) ++multiset_fail;
    }
  }
  return {reparse_fail == 0 && multiset_fail == 0,
          std::to_string(checked) + " reparsed (" + std::to_string(reparse_fail) +
              " failed), swap multiset failures " + std::to_string(multiset_fail)};
}

Verdict c3_selection() {
  std::mt19937_64 gen(3);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + gen() % 200;
    const std::size_t k = 1 + gen() % n;
    std::vector<double> loss(n);
    for (auto& l : loss) l = static_cast<double>(gen() % 40) / 7.0;
    const std::vector<std::optional<double>> opt(loss.begin(), loss.end());
    for (bool desc : {true, false}) {
      std::vector<std::size_t> oracle(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t ahead = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const bool better = desc ? loss[j] > loss[i] : loss[j] < loss[i];
          ahead += better || (loss[j] == loss[i] && j < i);
        }
        oracle[ahead] = i;
      }
      oracle.resize(k);
      selection::SelectionConfig cfg;
      cfg.strategy = desc ? selection::Strategy::MaxLoss : selection::Strategy::MinLoss;
      cfg.k = k;
      bad += selection::select_indices(opt, cfg) != oracle;
    }
  }
  return {bad == 0, "2000 pools, " + std::to_string(bad) + " disagreements"};
}

Verdict c4_pool_size() {
  CorpusConfig cc;
  cc.classes = 10;
  cc.per_class = 10;
  cc.langs = LangMix::Java;
  cc.seed = 4;
  const auto train = generate_corpus(cc);
  cc.per_class = 2;
  cc.id_prefix = "t";
  const auto test = generate_corpus(cc);
  selection::SearchSpaceConfig sc;
  sc.operators = selection::all_operators();
  const auto space = selection::build_search_space(train, sc);
  TrainConfig tc;
  tc.epochs = 1;
  tc.repetitions = 1;
  tc.dim = 1024;
  tc.robustness = false;
  const auto rep = run_gencode(train, test, tc);
  const auto& e = rep.runs[0].epochs[0];
  return {train.size() == 100 && space.candidates.size() == 2400 && space.skips.empty() &&
              e.pool_size == 2400 && e.trained == 100,
          "pool " + std::to_string(e.pool_size) + " (" + std::to_string(space.skips.size()) +
              " skips), trained " + std::to_string(e.trained)};
}

Verdict c5_degenerate() {
  CorpusConfig cc;
  cc.classes = 4;
  cc.per_class = 15;
  const auto split = split_corpus(generate_corpus(cc), kTestFraction, 5);
  TrainConfig tc;
  tc.epochs = 4;
  tc.repetitions = 3;
  tc.dim = 1024;
  auto empty = tc;
  empty.operators.clear();
  const auto a = report_to_json(run_gencode(split.train, split.test, empty)).dump();
  const auto b = report_to_json(run_no_aug(split.train, split.test, tc)).dump();
  return {a == b, a == b ? "reports byte-identical" : "reports differ"};
}

Verdict c6_scorer() {
  std::mt19937_64 gen(6);
  double worst_ln = 0;
  for (std::size_t classes : {2u, 4u, 10u}) {
    const auto m = scorer::make_model(classes, 256, scorer::Hyper{});
    for (int t = 0; t < 10; ++t) {
      scorer::FeatureVector x;
      x.dim = 256;
      std::set<std::uint32_t> idx;
      for (int i = 0; i < 8; ++i) idx.insert(static_cast<std::uint32_t>(gen() % 256));
      for (auto i : idx) x.entries.emplace_back(i, 1.0 + static_cast<double>(gen() % 3));
      const double l = scorer::loss_of(m, x, static_cast<std::size_t>(t) % classes).loss;
      worst_ln = std::max(worst_ln, std::abs(l - std::log(static_cast<double>(classes))));
    }
  }
  double worst_rel = 0;
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    scorer::Hyper h;
    h.init_scale = 0.3;
    h.seed = static_cast<std::uint64_t>(trial);
    h.l2 = 0.01 * (trial % 3);
    auto m = scorer::make_model(2 + static_cast<std::size_t>(trial % 5), 8, h);
    std::vector<scorer::LabeledFeatures> batch;
    for (int b = 0; b < 3; ++b) {
      scorer::FeatureVector x;
      x.dim = 8;
      for (std::uint32_t i = 0; i < 8; ++i) {
        if (gen() % 2) x.entries.emplace_back(i, std::abs(nd(gen)) + 0.1);
      }
      batch.push_back({x, static_cast<std::size_t>(b) % m.classes});
    }
    const auto g = scorer::gradient(m, batch);
    double diff = 0, norm = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double w = m.weights[i];
      m.weights[i] = w + 1e-6;
      const double up = scorer::objective(m, batch);
      m.weights[i] = w - 1e-6;
      const double down = scorer::objective(m, batch);
      m.weights[i] = w;
      const double fd = (up - down) / 2e-6;
      diff += (fd - g[i]) * (fd - g[i]);
      norm += std::max(fd * fd, g[i] * g[i]);
    }
    worst_rel = std::max(worst_rel, std::sqrt(diff / std::max(norm, 1e-30)));
  }
  return {worst_ln < kLnTol && worst_rel < kGradRelTol,
          "max |loss - ln C| " + fmt(worst_ln) + ", max gradient rel. error " + fmt(worst_rel)};
}

Verdict c7_stats() {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> nd;
  double worst_r = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + gen() % 50;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = nd(gen);
      y[i] = nd(gen) - 0.5 * x[i];
    }
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= n;
    my /= n;
    long double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
      syy += (y[i] - my) * (y[i] - my);
    }
    const double oracle = static_cast<double>(sxy / std::sqrt(sxx * syy));
    worst_r = std::max(worst_r, std::abs(pearson(x, y) - oracle));
  }
  double worst_w = 0;
  std::size_t cases = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 5 + gen() % 6;
    std::vector<double> a(n), b(n), d;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<double>(gen() % 7);
      b[i] = static_cast<double>(gen() % 7);
      if (a[i] != b[i]) d.push_back(a[i] - b[i]);
    }
    if (d.size() < 5) continue;
    ++cases;
    const std::size_t m = d.size();
    std::vector<double> rank(m);
    for (std::size_t i = 0; i < m; ++i) {
      double less = 0, eq = 0;
      for (std::size_t j = 0; j < m; ++j) {
        less += std::abs(d[j]) < std::abs(d[i]);
        eq += std::abs(d[j]) == std::abs(d[i]);
      }
      rank[i] = less + (eq + 1) / 2;
    }
    double wp = 0, wm = 0;
    for (std::size_t i = 0; i < m; ++i) (d[i] > 0 ? wp : wm) += rank[i];
    const double w = std::min(wp, wm);
    double hits = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      double s = 0;
      for (std::size_t i = 0; i < m; ++i) s += (mask >> i & 1) ? rank[i] : 0.0;
      hits += s <= w + 1e-9;
    }
    const double p = std::min(1.0, 2 * hits / std::ldexp(1.0, static_cast<int>(m)));
    worst_w = std::max(worst_w, std::abs(wilcoxon_signed_rank(a, b).p_value - p));
  }
  return {worst_r < kPearsonTol && worst_w < kWilcoxonTol,
          "max pearson error " + fmt(worst_r) + ", max wilcoxon error " + fmt(worst_w) + " over " +
              std::to_string(cases) + " cases"};
}

Verdict c8_correlation() {
  const auto t0 = Clock::now();
  std::size_t good = 0;
  std::string per;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto split = benchmark_split(seed);
    StudyConfig sc;
    sc.train.dim = kDim;
    sc.seed = seed;
    const auto res = correlation_study(split.train, split.test, Stage::Early, sc);
    const bool ok = res.pcc > 0 && res.p_value < kStudyAlpha;
    good += ok;
    per += " " + fmt(res.pcc) + "/p=" + fmt(res.p_value);
  }
  const double secs = seconds_since(t0);
  return {good >= kStudySeedsNeeded && secs < kStudyBudgetS,
          std::to_string(good) + "/5 seeds significant; pcc/p:" + per + ", " + fmt(secs) + "s"};
}

struct StrategyRuns {
  ExperimentReport max_loss, random, min_loss, no_aug;
  Split split;
};

StrategyRuns& strategy_runs() {
  static StrategyRuns runs = [] {
    StrategyRuns r;
    r.split = benchmark_split(0);
    TrainConfig tc;
    tc.dim = kDim;
    tc.selection.strategy = selection::Strategy::MaxLoss;
    r.max_loss = run_gencode(r.split.train, r.split.test, tc);
    tc.selection.strategy = selection::Strategy::Random;
    r.random = run_gencode(r.split.train, r.split.test, tc);
    tc.selection.strategy = selection::Strategy::MinLoss;
    r.min_loss = run_gencode(r.split.train, r.split.test, tc);
    r.no_aug = run_no_aug(r.split.train, r.split.test, tc);
    return r;
  }();
  return runs;
}

Verdict c9_strategies() {
  const auto& r = strategy_runs();
  const double hi = r.max_loss.mean_accuracy;
  const double mid = r.random.mean_accuracy;
  const double lo = r.min_loss.mean_accuracy;
  return {hi >= mid && mid >= lo,
          "max-loss " + fmt(hi) + " >= random " + fmt(mid) + " >= min-loss " + fmt(lo)};
}

Verdict c10_robustness() {
  const auto& r = strategy_runs();
  const auto set = build_natural_robustness_set(r.split.test, TrainConfig{}.robustness_seed);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < set.programs.size(); ++i) {
    const auto& q = set.programs[i];
    try {
      const auto tree = ir::parse_source(q.content, q.lang);
      bad += q.label != r.split.test[i].label;
      for (const auto& io : r.split.test[i].io_pairs) {
        if (ir::observation(ir::execute(tree, io.args), q.lang, false) != io.expected) {
          ++bad;
          break;
        }
      }
    } catch (const Error&) {
      ++bad;
    }
  }
  const double g = r.max_loss.mean_robustness.value_or(-1);
  const double n = r.no_aug.mean_robustness.value_or(-1);
  return {bad == 0 && g >= n, std::to_string(set.programs.size()) + " programs, " +
                                  std::to_string(bad) + " invalid; max-loss " + fmt(g) +
                                  " vs no-aug " + fmt(n)};
}

Verdict c11_analysis() {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> rows(120, std::vector<double>(8));
  for (auto& row : rows) {
    for (std::size_t j = 0; j < 8; ++j) row[j] = nd(gen) * (0.5 + static_cast<double>(j % 4));
    row[1] += row[7];
  }
  const auto pca = pca_project(rows, 2);
  double ortho = 0;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      double dot = 0;
      for (std::size_t j = 0; j < 8; ++j) dot += pca.components[a][j] * pca.components[b][j];
      ortho = std::max(ortho, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  std::size_t beaten = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> dir(8);
    double norm = 0;
    for (auto& v : dir) {
      v = nd(gen);
      norm += v * v;
    }
    for (auto& v : dir) v /= std::sqrt(norm);
    beaten += captured_variance(rows, dir) > pca.variances[0] + 1e-9;
  }
  const bool ordered = pca.variances[0] >= pca.variances[1];

  std::vector<LabeledPoint> pts(80);
  for (auto& p : pts) p = {nd(gen), nd(gen), static_cast<std::size_t>(gen() % 5)};
  double sum = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j || pts[i].cls == pts[j].cls) continue;
      sum += std::sqrt((pts[i].x - pts[j].x) * (pts[i].x - pts[j].x) +
                       (pts[i].y - pts[j].y) * (pts[i].y - pts[j].y));
      pairs += 1;
    }
  }
  const double dist_err = std::abs(interclass_distance(pts) - sum / pairs);

  CorpusConfig cc;
  cc.classes = 4;
  cc.per_class = 5;
  const auto progs = generate_corpus(cc);
  double conf_err = 0;
  for (std::size_t c : {4u, 7u}) {
    const auto zero = scorer::make_model(c, 512, scorer::Hyper{});
    conf_err = std::max(conf_err, std::abs(mean_max_probability(zero, progs) - 1.0 / static_cast<double>(c)));
  }
  return {ortho < kOrthoTol && beaten == 0 && ordered && dist_err < kDistanceTol &&
              conf_err < kConfidenceTol,
          "orthonormality " + fmt(ortho) + ", random directions above PC1 " + std::to_string(beaten) +
              ", distance error " + fmt(dist_err) + ", confidence error " + fmt(conf_err)};
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[fs::relative(e.path(), root).string()] = s.str();
  }
  return out;
}

Verdict c12_determinism() {
  const fs::path base = fs::temp_directory_path() / ("gencode_accept_" + std::to_string(::getpid()));
  std::vector<std::map<std::string, std::string>> trees;
  std::ostringstream log;
  for (int rep = 0; rep < 2; ++rep) {
    const fs::path dir = base / std::to_string(rep);
    fs::remove_all(dir);
    app::RunConfig cfg;
    cfg.seed = 12;
    cfg.corpus.classes = 4;
    cfg.corpus.per_class = 14;
    cfg.train.epochs = 3;
    cfg.train.repetitions = 3;
    cfg.train.dim = 1024;
    cfg.train.record_provenance = true;
    cfg.study_groups = 5;
    cfg.study_finetune_epochs = 1;
    const std::string data = (dir / "data").string();
    app::cmd_gen_corpus(cfg, data, log);
    app::cmd_augment(cfg, data + "/train.jsonl", (dir / "aug").string(), log);
    app::cmd_train(cfg, data + "/train.jsonl", data + "/test.jsonl", (dir / "run").string(), log);
    app::cmd_eval(cfg, (dir / "run" / "model_seed0.gcf").string(), data + "/test.jsonl",
                  (dir / "eval").string(), log);
    app::cmd_study(cfg, data + "/train.jsonl", data + "/test.jsonl", (dir / "study").string(), log);
    trees.push_back(read_tree(dir));
  }
  fs::remove_all(base);
  std::size_t differing = 0;
  for (const auto& [name, bytes] : trees[0]) {
    auto it = trees[1].find(name);
    differing += it == trees[1].end() || it->second != bytes;
  }
  differing += trees[0].size() != trees[1].size();
  return {differing == 0 && trees[0].size() > 10,
          std::to_string(trees[0].size()) + " artifacts, " + std::to_string(differing) + " differ"};
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"GenCode acceptance suite"};
  std::string only;
  std::string allow;
  cli.add_option("--only", only, "comma-separated criteria to run");
  cli.add_option("--allow-fail", allow, "criteria whose failure does not affect the exit status");
  CLI11_PARSE(cli, argc, argv);
  const auto selected = parse_list(only);
  const auto allowed = parse_list(allow);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"semantic preservation", c1_semantic},
      {"syntax preservation", c2_syntax},
      {"selection oracle", c3_selection},
      {"search space size", c4_pool_size},
      {"degenerate equivalence", c5_degenerate},
      {"scorer loss and gradient", c6_scorer},
      {"statistics oracles", c7_stats},
      {"early-stage loss/accuracy correlation", c8_correlation},
      {"strategy ordering", c9_strategies},
      {"natural robustness", c10_robustness},
      {"pca, distance, confidence", c11_analysis},
      {"determinism", c12_determinism},
  };
  int hard_failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && selected.count(id) == 0) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const bool excused = !v.pass && allowed.count(id) != 0;
    std::cout << (v.pass ? "PASS" : "FAIL") << " C" << id << " " << criteria[i].first << ": "
              << v.detail << (excused ? " [known failure]" : "") << std::endl;
    if (!v.pass && !excused) ++hard_failures;
  }
  return hard_failures;
}
