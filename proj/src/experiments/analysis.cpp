#include "gencode/experiments/analysis.hpp"

#include <exception>

#include "gencode/common/error.hpp"
#include "gencode/common/hash.hpp"
#include "gencode/common/rng.hpp"
#include "gencode/experiments/stats.hpp"
#include "gencode/ir/parser.hpp"
#include "gencode/ir/printer.hpp"
#include "gencode/refactor/refactor.hpp"
#include "gencode/scorer/score.hpp"
#include "gencode/selection/search_space.hpp"

namespace gencode::experiments {

RobustnessSet build_natural_robustness_set(std::span<const ir::Program> test, std::uint64_t seed) {
  RobustnessSet out;
  out.programs.reserve(test.size());
  for (const auto& p : test) {
    const ir::SyntaxTree tree = ir::parse_source(p.content, p.lang);
    const auto eligible = refactor::eligible_kinds(tree);
    ir::Program q = p;
    if (eligible.empty()) {
      out.unchanged_ids.push_back(p.id);
    } else {
      const std::uint64_t s = mix_seed(seed, fnv1a64(p.id));
      Rng rng(s);
      const auto kind = eligible[rng.index(eligible.size())];
      const auto outcome = refactor::apply_refactor(kind, tree, mix_seed(s, 1));
      if (outcome.status == refactor::RewriteStatus::Applied) {
        q.content = ir::print(outcome.tree);
      } else {
        out.unchanged_ids.push_back(p.id);
      }
    }
    out.programs.push_back(std::move(q));
  }
  return out;
}

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::Early: return "early";
    case Stage::Mid: return "mid";
    case Stage::Late: return "late";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : {Stage::Early, Stage::Mid, Stage::Late}) {
    if (stage_name(s) == name) return s;
  }
  return std::nullopt;
}

std::size_t stage_pre_epochs(Stage s) {
  switch (s) {
    case Stage::Early: return 0;
    case Stage::Mid: return 10;
    case Stage::Late: return 20;
  }
  return 0;
}

StudyResult correlation_study(std::span<const ir::Program> train, std::span<const ir::Program> test,
                              Stage stage, const StudyConfig& cfg) {
  if (cfg.groups < 3) throw Error(ErrorFamily::Usage, "InvalidConfig", "study needs at least 3 groups");
  if (cfg.finetune_epochs == 0) {
    throw Error(ErrorFamily::Usage, "InvalidConfig", "finetune_epochs must be >= 1");
  }
  validate(cfg.train);
  if (train.empty() || test.empty()) {
    throw Error(ErrorFamily::Data, "EmptyDataset", "train and test sets must be non-empty");
  }
  const std::size_t classes = class_count(train, test);
  const std::size_t dim = cfg.train.dim;
  const auto test_feats = featurize_programs(test, dim);

  scorer::Hyper hyper = cfg.train.hyper;
  hyper.init_scale = cfg.init_scale;
  hyper.seed = mix_seed(cfg.seed, 1);
  scorer::ModelState stage_model = scorer::make_model(classes, dim, hyper);
  const std::size_t pre = cfg.pre_epochs.value_or(stage_pre_epochs(stage));
  if (pre > 0) {
    const auto originals = featurize_programs(train, dim);
    train_epochs(stage_model, originals, pre, cfg.train.batch_size, mix_seed(cfg.seed, 2));
  }

  const auto prepared = selection::prepare(train);
  selection::SearchSpaceConfig sc;
  sc.operators = cfg.train.operators;
  sc.include_originals = cfg.train.selection.include_originals;
  sc.seed = mix_seed(cfg.seed, 3);
  sc.text = cfg.train.text;
  const auto space = selection::build_search_space(prepared, sc);
  if (space.candidates.empty()) throw Error(ErrorFamily::Data, "EmptyDataset", "empty search space");

  const auto pool = featurize_programs(
      [&] {
        std::vector<ir::Program> as_programs;
        as_programs.reserve(space.candidates.size());
        for (const auto& c : space.candidates) {
          as_programs.push_back({c.id, c.lang, c.content, static_cast<int>(c.label), {}});
        }
        return as_programs;
      }(),
      dim);
  const auto scored = scorer::score_features_parallel(stage_model, pool);

  const std::size_t k = std::min(train.size(), pool.size());
  StudyResult res;
  res.points.resize(cfg.groups);
  std::vector<std::exception_ptr> errors(cfg.groups);
  const auto n = static_cast<long long>(cfg.groups);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long g = 0; g < n; ++g) {
    const auto u = static_cast<std::size_t>(g);
    try {
      Rng rng(mix_seed(mix_seed(cfg.seed, 4), u));
      const auto members = rng.sample_without_replacement(pool.size(), k);
      std::vector<scorer::LabeledFeatures> group;
      double loss_sum = 0.0;
      for (std::size_t i : members) {
        group.push_back(pool[i]);
        loss_sum += scored[i].loss;
      }
      scorer::ModelState model = stage_model;
      train_epochs(model, group, cfg.finetune_epochs, cfg.train.batch_size,
                   mix_seed(mix_seed(cfg.seed, 5), u));
      res.points[u] = {loss_sum / static_cast<double>(k), accuracy(model, test_feats)};
    } catch (...) {
      errors[u] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [x, y] : res.points) {
    xs.push_back(x);
    ys.push_back(y);
  }
  res.pcc = pearson(xs, ys);
  res.p_value = pearson_p_value(res.pcc, xs.size());
  return res;
}

}  // namespace gencode::experiments
