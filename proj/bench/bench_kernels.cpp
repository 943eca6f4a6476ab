// Serial reference vs OpenMP paths for the two hot kernels: scoring a pool
// and building a search space.
#include <benchmark/benchmark.h>

#include "gencode/experiments/corpus.hpp"
#include "gencode/experiments/training.hpp"
#include "gencode/scorer/score.hpp"
#include "gencode/selection/search_space.hpp"

using namespace gencode;

namespace {

const std::vector<selection::PreparedProgram>& prepared() {
  static const auto p = [] {
    experiments::CorpusConfig cc;
    cc.classes = 10;
    cc.per_class = 10;
    return selection::prepare(experiments::generate_corpus(cc));
  }();
  return p;
}

const selection::SearchSpace& pool() {
  static const auto s = [] {
    selection::SearchSpaceConfig cfg;
    cfg.operators = selection::all_operators();
    return selection::build_search_space(prepared(), cfg);
  }();
  return s;
}

std::vector<scorer::ScoreRequest> requests() {
  std::vector<scorer::ScoreRequest> out;
  for (const auto& c : pool().candidates) out.push_back({c.id, c.content, c.lang, c.label});
  return out;
}

scorer::ModelState model() {
  scorer::Hyper h;
  h.init_scale = 0.01;
  return scorer::make_model(10, 1 << 15, h);
}

void BM_ScoreSerial(benchmark::State& state) {
  const auto m = model();
  const auto reqs = requests();
  for (auto _ : state) benchmark::DoNotOptimize(scorer::score_batch_serial(m, reqs));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * reqs.size()));
}

void BM_ScoreParallel(benchmark::State& state) {
  const auto m = model();
  const auto reqs = requests();
  for (auto _ : state) benchmark::DoNotOptimize(scorer::score_batch_parallel(m, reqs));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * reqs.size()));
}

void BM_SearchSpaceSerial(benchmark::State& state) {
  selection::SearchSpaceConfig cfg;
  cfg.operators = selection::all_operators();
  for (auto _ : state) benchmark::DoNotOptimize(selection::build_search_space_serial(prepared(), cfg));
}

void BM_SearchSpaceParallel(benchmark::State& state) {
  selection::SearchSpaceConfig cfg;
  cfg.operators = selection::all_operators();
  for (auto _ : state) benchmark::DoNotOptimize(selection::build_search_space(prepared(), cfg));
}

}  // namespace

BENCHMARK(BM_ScoreSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSpaceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSpaceParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
