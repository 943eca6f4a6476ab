#include "gencode/experiments/training.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <memory>
#include <set>

#include "gencode/common/error.hpp"
#include "gencode/common/rng.hpp"
#include "gencode/experiments/analysis.hpp"
#include "gencode/experiments/pca.hpp"
#include "gencode/experiments/stats.hpp"
#include "gencode/scorer/score.hpp"
#include "gencode/selection/search_space.hpp"

namespace gencode::experiments {

namespace {

// Seed streams derived from a run seed.
enum SeedStream : std::uint64_t {
  kInitStream = 1,
  kSpaceStream = 2,
  kSelectStream = 3,
  kShuffleStream = 4,
};

std::uint64_t stream_seed(std::uint64_t seed, SeedStream stream, std::uint64_t epoch) {
  return mix_seed(mix_seed(seed, stream), epoch);
}

struct Shared {
  std::vector<selection::PreparedProgram> train;
  std::vector<scorer::LabeledFeatures> test;
  std::optional<std::vector<scorer::LabeledFeatures>> robust;
  std::vector<ir::Program> test_programs;
  std::size_t classes = 0;
  std::size_t robustness_unchanged = 0;
};

Shared prepare_shared(std::span<const ir::Program> train, std::span<const ir::Program> test,
                      const TrainConfig& cfg) {
  validate(cfg);
  if (train.empty() || test.empty()) {
    throw Error(ErrorFamily::Data, "EmptyDataset", "train and test sets must be non-empty");
  }
  std::set<std::string> ids;
  for (const auto& p : train) ids.insert(p.id);
  for (const auto& p : test) {
    if (ids.count(p.id) != 0) {
      throw Error(ErrorFamily::Data, "OverlappingIds", "id in both train and test: " + p.id);
    }
  }
  Shared s;
  s.classes = class_count(train, test);
  s.train = selection::prepare(train);
  s.test = featurize_programs(test, cfg.dim);
  s.test_programs.assign(test.begin(), test.end());
  if (cfg.robustness) {
    auto robust = build_natural_robustness_set(test, cfg.robustness_seed);
    s.robust = featurize_programs(robust.programs, cfg.dim);
    s.robustness_unchanged = robust.unchanged_ids.size();
  }
  return s;
}

std::vector<scorer::LabeledFeatures> featurize_candidates(
    const std::vector<selection::Candidate>& cands, std::span<const std::size_t> which,
    std::size_t dim) {
  std::vector<scorer::LabeledFeatures> out(which.size());
  const auto n = static_cast<long long>(which.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    const auto& c = cands[which[static_cast<std::size_t>(i)]];
    out[static_cast<std::size_t>(i)] = {scorer::featurize_text(c.content, c.lang, dim), c.label};
  }
  return out;
}

std::vector<std::optional<double>> score_pool(const std::vector<selection::Candidate>& pool,
                                              const std::vector<scorer::LabeledFeatures>& feats,
                                              const scorer::ModelState& model,
                                              scorer::Scorer* external) {
  std::vector<std::optional<double>> losses(pool.size());
  if (external != nullptr) {
    std::vector<scorer::ScoreRequest> reqs;
    reqs.reserve(pool.size());
    for (const auto& c : pool) reqs.push_back({c.id, c.content, c.lang, c.label});
    auto scored = scorer::score_batch(*external, reqs);
    for (std::size_t i = 0; i < pool.size(); ++i) losses[i] = scored[i].loss;
    return losses;
  }
  auto scored = scorer::score_features_parallel(model, feats);
  for (std::size_t i = 0; i < pool.size(); ++i) losses[i] = scored[i].loss;
  return losses;
}

RunResult train_run(const Shared& data, const TrainConfig& cfg, std::uint64_t seed, bool augment) {
  RunResult run;
  run.seed = seed;
  scorer::Hyper hyper = cfg.hyper;
  hyper.seed = stream_seed(seed, kInitStream, 0);
  scorer::ModelState model = scorer::make_model(data.classes, cfg.dim, hyper);
  std::unique_ptr<scorer::ExternalScorer> external;
  if (augment && cfg.external_scorer) {
    external = std::make_unique<scorer::ExternalScorer>(*cfg.external_scorer);
  }

  const std::size_t k = data.train.size();
  double best_accuracy = -1.0;
  run.model = model;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    selection::SearchSpaceConfig sc;
    if (augment) sc.operators = cfg.operators;
    sc.include_originals = augment ? cfg.selection.include_originals : true;
    sc.seed = stream_seed(seed, kSpaceStream, epoch);
    sc.text = cfg.text;
    selection::SearchSpace space = selection::build_search_space(data.train, sc);
    auto& pool = space.candidates;
    if (pool.empty()) {
      throw Error(ErrorFamily::Data, "EmptyDataset", "epoch search space is empty");
    }

    // Losses only matter when the strategy ranks and the pool exceeds K.
    const bool needs_scores =
        augment && cfg.selection.strategy != selection::Strategy::Random && pool.size() > k;
    std::vector<scorer::LabeledFeatures> pool_feats;
    std::vector<std::optional<double>> losses(pool.size());
    if (needs_scores) {
      if (!external) {
        std::vector<std::size_t> all(pool.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        pool_feats = featurize_candidates(pool, all, cfg.dim);
      }
      losses = score_pool(pool, pool_feats, model, external.get());
    }

    selection::SelectionConfig sel = cfg.selection;
    sel.k = k;
    sel.seed = stream_seed(seed, kSelectStream, epoch);
    std::vector<std::size_t> chosen;
    if (pool.size() <= k) {
      chosen.resize(pool.size());
      for (std::size_t i = 0; i < pool.size(); ++i) chosen[i] = i;
    } else {
      chosen = selection::select_indices(losses, sel);
    }
    std::sort(chosen.begin(), chosen.end());
    Rng shuffle_rng(stream_seed(seed, kShuffleStream, epoch));
    shuffle_rng.shuffle(chosen);

    std::vector<scorer::LabeledFeatures> batch_items;
    if (!pool_feats.empty()) {
      for (std::size_t i : chosen) batch_items.push_back(pool_feats[i]);
    } else {
      batch_items = featurize_candidates(pool, chosen, cfg.dim);
    }

    EpochMetrics m;
    m.epoch = epoch;
    m.pool_size = pool.size();
    m.trained = chosen.size();
    m.skipped = space.skips.size();
    for (std::size_t i : chosen) ++m.operator_histogram[selection::operator_name(pool[i].op)];
    if (cfg.record_provenance) {
      for (std::size_t i : chosen) {
        run.provenance.push_back({epoch, pool[i].id, pool[i].origin_id,
                                  selection::operator_name(pool[i].op), losses[i]});
      }
    }

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < batch_items.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(batch_items.size(), start + cfg.batch_size);
      std::span<const scorer::LabeledFeatures> batch(batch_items.data() + start, end - start);
      for (const auto& item : batch) loss_sum += scorer::loss_of(model, item.x, item.label).loss;
      scorer::train_step_inplace(model, batch);
    }
    m.train_loss = loss_sum / static_cast<double>(batch_items.size());
    m.test_accuracy = accuracy(model, data.test);
    if (cfg.record_timing) {
      m.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                      .count();
    }
    run.epochs.push_back(std::move(m));

    if (run.epochs.back().test_accuracy > best_accuracy) {
      best_accuracy = run.epochs.back().test_accuracy;
      run.best_epoch = epoch;
      run.model = model;
    } else if (epoch - run.best_epoch >= cfg.early_stop_patience) {
      run.stopped_early = epoch + 1 < cfg.epochs;
      break;
    }
  }
  run.final_accuracy = best_accuracy;
  if (data.robust) run.robustness_accuracy = accuracy(run.model, *data.robust);
  try {
    run.confidence = mean_max_probability(run.model, std::span<const scorer::LabeledFeatures>(data.test));
  } catch (const Error&) {
    run.confidence.reset();
  }
  try {
    const auto projected = pca_project(embed_programs(run.model, data.test_programs), 2);
    std::vector<LabeledPoint> points;
    for (std::size_t i = 0; i < projected.points.size(); ++i) {
      points.push_back({projected.points[i][0], projected.points[i][1],
                        static_cast<std::size_t>(data.test_programs[i].label)});
    }
    run.interclass_distance = interclass_distance(points);
  } catch (const Error&) {
    run.interclass_distance.reset();
  }
  return run;
}

ExperimentReport run_experiment(std::span<const ir::Program> train, std::span<const ir::Program> test,
                                const TrainConfig& cfg, bool augment) {
  const Shared data = prepare_shared(train, test, cfg);
  const auto seeds = run_seeds(cfg);
  ExperimentReport report;
  report.classes = data.classes;
  report.robustness_unchanged = data.robustness_unchanged;
  report.runs.resize(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  const auto n = static_cast<long long>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1) if (cfg.parallel_repetitions)
  for (long long r = 0; r < n; ++r) {
    const auto u = static_cast<std::size_t>(r);
    try {
      report.runs[u] = train_run(data, cfg, seeds[u], augment);
    } catch (...) {
      errors[u] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<double> acc;
  std::vector<double> robust;
  for (const auto& run : report.runs) {
    acc.push_back(run.final_accuracy);
    if (run.robustness_accuracy) robust.push_back(*run.robustness_accuracy);
  }
  report.mean_accuracy = mean(acc);
  report.std_accuracy = sample_std(acc);
  if (robust.size() == report.runs.size()) {
    report.mean_robustness = mean(robust);
    report.std_robustness = sample_std(robust);
  }
  return report;
}

}  // namespace

void validate(const TrainConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorFamily::Usage, "InvalidConfig", msg); };
  if (cfg.epochs == 0) fail("epochs must be >= 1");
  if (cfg.repetitions == 0) fail("repetitions must be >= 1");
  if (!cfg.seeds.empty() && cfg.seeds.size() != cfg.repetitions) {
    fail("seeds must list exactly `repetitions` values");
  }
  if (cfg.batch_size == 0) fail("batch_size must be >= 1");
  if (!scorer::is_power_of_two(cfg.dim)) fail("dim must be a power of two");
  if (!(cfg.hyper.learning_rate > 0.0)) fail("learning_rate must be > 0");
  if (cfg.hyper.l2 < 0.0) fail("l2 must be >= 0");
  textops::validate(cfg.text);
}

std::vector<std::uint64_t> run_seeds(const TrainConfig& cfg) {
  if (!cfg.seeds.empty()) return cfg.seeds;
  std::vector<std::uint64_t> seeds(cfg.repetitions);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
  return seeds;
}

ExperimentReport run_gencode(std::span<const ir::Program> train, std::span<const ir::Program> test,
                             const TrainConfig& cfg) {
  return run_experiment(train, test, cfg, true);
}

ExperimentReport run_no_aug(std::span<const ir::Program> train, std::span<const ir::Program> test,
                            const TrainConfig& cfg) {
  return run_experiment(train, test, cfg, false);
}

double accuracy(const scorer::ModelState& model, std::span<const scorer::LabeledFeatures> items) {
  if (items.empty()) return 0.0;
  long long correct = 0;
  const auto n = static_cast<long long>(items.size());
#pragma omp parallel for reduction(+ : correct) schedule(static)
  for (long long i = 0; i < n; ++i) {
    const auto& item = items[static_cast<std::size_t>(i)];
    if (scorer::predict(model, item.x) == item.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(items.size());
}

std::vector<scorer::LabeledFeatures> featurize_programs(std::span<const ir::Program> programs,
                                                        std::size_t dim) {
  std::vector<scorer::LabeledFeatures> out(programs.size());
  const auto n = static_cast<long long>(programs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    const auto& p = programs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = {scorer::featurize_text(p.content, p.lang, dim),
                                        static_cast<std::size_t>(p.label)};
  }
  return out;
}

std::size_t class_count(std::span<const ir::Program> train, std::span<const ir::Program> test) {
  int max_label = -1;
  for (const auto* set : {&train, &test}) {
    for (const auto& p : *set) {
      if (p.label < 0) {
        throw Error(ErrorFamily::Data, "LabelOutOfRange", "negative label on " + p.id);
      }
      max_label = std::max(max_label, p.label);
    }
  }
  if (max_label < 1) throw Error(ErrorFamily::Data, "LabelOutOfRange", "need at least two classes");
  return static_cast<std::size_t>(max_label) + 1;
}

double train_epochs(scorer::ModelState& model, std::span<const scorer::LabeledFeatures> items,
                    std::size_t epochs, std::size_t batch_size, std::uint64_t seed) {
  double last = 0.0;
  std::vector<std::size_t> order(items.size());
  for (std::size_t e = 0; e < epochs; ++e) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(mix_seed(seed, e));
    rng.shuffle(order);
    double loss_sum = 0.0;
    std::vector<scorer::LabeledFeatures> batch;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      batch.clear();
      for (std::size_t j = start; j < std::min(order.size(), start + batch_size); ++j) {
        batch.push_back(items[order[j]]);
        loss_sum += scorer::loss_of(model, batch.back().x, batch.back().label).loss;
      }
      scorer::train_step_inplace(model, batch);
    }
    last = order.empty() ? 0.0 : loss_sum / static_cast<double>(order.size());
  }
  return last;
}

}  // namespace gencode::experiments
