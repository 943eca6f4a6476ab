#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "gencode/common/error.hpp"
#include "gencode/ir/token.hpp"
#include "gencode/scorer/external.hpp"
#include "gencode/scorer/features.hpp"
#include "gencode/scorer/model.hpp"
#include "gencode/scorer/score.hpp"

using namespace gencode;
using namespace gencode::scorer;

namespace {

FeatureVector random_features(std::mt19937_64& gen, std::size_t dim, std::size_t nnz) {
  std::uniform_int_distribution<std::uint32_t> idx(0, static_cast<std::uint32_t>(dim - 1));
  std::uniform_real_distribution<double> val(0.5, 3.0);
  std::map<std::uint32_t, double> m;
  for (std::size_t i = 0; i < nnz; ++i) m[idx(gen)] += val(gen);
  FeatureVector f;
  f.dim = dim;
  f.entries.assign(m.begin(), m.end());
  return f;
}

// Plain softmax cross-entropy written directly from the weights.
double reference_loss(const ModelState& m, const FeatureVector& x, std::size_t label) {
  std::vector<double> z(m.classes, 0.0);
  for (std::size_t c = 0; c < m.classes; ++c) {
    for (const auto& [i, v] : x.entries) z[c] += m.weights[c * m.dim + i] * v;
  }
  double mx = z[0];
  for (double v : z) mx = std::max(mx, v);
  double s = 0.0;
  for (double v : z) s += std::exp(v - mx);
  return -(z[label] - mx - std::log(s));
}

std::vector<ScoreRequest> requests_from_fixtures() {
  std::vector<ScoreRequest> out;
  std::size_t i = 0;
  for (const auto& [src, lang] : fixtures::all_sources()) {
    out.push_back({"r" + std::to_string(i), src, lang, i % 3});
    ++i;
  }
  out.push_back({"broken", "int f( { @@", ir::Lang::JavaLite, 1});
  return out;
}

double mock_loss(const ScoreRequest& r) {
  return static_cast<double>(r.text.size() % 7) / 10.0 + static_cast<double>(r.label) / 100.0;
}

ExternalScorerConfig mock(std::vector<std::string> args) {
  ExternalScorerConfig cfg;
  cfg.command = {MOCK_SCORER_PATH};
  cfg.command.insert(cfg.command.end(), args.begin(), args.end());
  cfg.timeout_ms = 2000;
  cfg.window = 3;
  return cfg;
}

}  // namespace

TEST(Features, MatchesIndependentGolden) {
  std::ifstream in(std::string(GENCODE_GOLDEN_DIR) + "/features_java.txt");
  ASSERT_TRUE(in);
  std::size_t dim = 0;
  in >> dim;
  FeatureVector expected;
  expected.dim = dim;
  std::uint32_t i = 0;
  double c = 0;
  while (in >> i >> c) expected.entries.emplace_back(i, c);
  const auto toks = ir::tokenize("int f(int x) {\n    return x + 1;\n}\n", ir::Lang::JavaLite);
  EXPECT_EQ(featurize(toks, dim), expected);
}

TEST(Features, LayoutAndTriviaDoNotMatter) {
  const auto a = featurize_text("int f(int x) { return x + 1; }", ir::Lang::JavaLite, 256);
  const auto b = featurize_text("int f(int x)\n{\n  // hi\n  return x+1;\n}\n", ir::Lang::JavaLite, 256);
  EXPECT_EQ(a, b);
}

TEST(Model, RejectsBadShapes) {
  EXPECT_THROW(make_model(1, 64, Hyper{}), Error);
  EXPECT_THROW(make_model(3, 48, Hyper{}), Error);
  const auto m = make_model(3, 64, Hyper{});
  FeatureVector x;
  x.dim = 32;
  EXPECT_THROW(embed(m, x), Error);
}

TEST(Model, ZeroModelLossIsLogClasses) {
  std::mt19937_64 gen(1);
  for (std::size_t classes : {2u, 4u, 10u}) {
    const auto m = make_model(classes, 128, Hyper{});
    for (int t = 0; t < 10; ++t) {
      const auto x = random_features(gen, 128, 12);
      const auto s = loss_of(m, x, static_cast<std::size_t>(t) % classes);
      EXPECT_NEAR(s.loss, std::log(static_cast<double>(classes)), 1e-9);
      EXPECT_NEAR(s.max_probability, 1.0 / static_cast<double>(classes), 1e-12);
    }
  }
}

TEST(Model, LossMatchesReferenceAndSoftmaxIsStable) {
  std::mt19937_64 gen(2);
  Hyper h;
  h.init_scale = 0.3;
  h.seed = 7;
  const auto m = make_model(5, 64, h);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_features(gen, 64, 10);
    EXPECT_NEAR(loss_of(m, x, 2).loss, reference_loss(m, x, 2), 1e-10);
  }
  const std::vector<double> big = {1000.0, 1001.0, 999.0};
  const auto p = softmax(big);
  double s = 0.0;
  for (double v : p) {
    EXPECT_TRUE(std::isfinite(v));
    s += v;
  }
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(Model, GradientMatchesFiniteDifferences) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    Hyper h;
    h.init_scale = 0.2;
    h.seed = static_cast<std::uint64_t>(trial);
    h.l2 = trial % 2 == 0 ? 0.0 : 0.05;
    ModelState m = make_model(2 + static_cast<std::size_t>(trial) % 4, 16, h);
    std::vector<LabeledFeatures> batch;
    for (int b = 0; b < 4; ++b) {
      batch.push_back({random_features(gen, 16, 5), static_cast<std::size_t>(b) % m.classes});
    }
    const auto g = gradient(m, batch);
    double diff = 0.0;
    double norm = 0.0;
    const double eps = 1e-6;
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
      const double w = m.weights[i];
      m.weights[i] = w + eps;
      const double up = objective(m, batch);
      m.weights[i] = w - eps;
      const double down = objective(m, batch);
      m.weights[i] = w;
      const double fd = (up - down) / (2 * eps);
      diff += (fd - g[i]) * (fd - g[i]);
      norm += std::max(fd * fd, g[i] * g[i]);
    }
    EXPECT_LT(std::sqrt(diff / std::max(norm, 1e-30)), 1e-4) << "trial " << trial;
  }
}

TEST(Model, SgdStepIsPlainDescent) {
  std::mt19937_64 gen(4);
  Hyper h;
  h.optimizer = Optimizer::Sgd;
  h.learning_rate = 0.1;
  h.init_scale = 0.1;
  const auto m = make_model(3, 32, h);
  const std::vector<LabeledFeatures> batch = {{random_features(gen, 32, 6), 1}};
  const auto g = gradient(m, batch);
  const auto next = train_step(m, batch);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(next.weights[i], m.weights[i] - 0.1 * g[i], 1e-15);
  }
  EXPECT_THROW(train_step(m, {}), Error);
}

TEST(Model, FirstAdamStepMovesBySignedLearningRate) {
  std::mt19937_64 gen(5);
  Hyper h;
  h.learning_rate = 0.01;
  h.l2 = 0.0;
  const auto m = make_model(3, 32, h);
  const std::vector<LabeledFeatures> batch = {{random_features(gen, 32, 6), 0}};
  const auto g = gradient(m, batch);
  const auto next = train_step(m, batch);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double expect = g[i] == 0.0 ? 0.0 : -0.01 * g[i] / (std::abs(g[i]) + 1e-8);
    EXPECT_NEAR(next.weights[i] - m.weights[i], expect, 1e-12);
  }
  EXPECT_EQ(next.step_count, 1u);
}

TEST(Model, TrainingReducesObjective) {
  std::mt19937_64 gen(6);
  Hyper h;
  h.learning_rate = 0.05;
  ModelState m = make_model(4, 64, h);
  std::vector<LabeledFeatures> batch;
  for (int i = 0; i < 16; ++i) batch.push_back({random_features(gen, 64, 8), static_cast<std::size_t>(i % 4)});
  const double before = objective(m, batch);
  for (int s = 0; s < 50; ++s) train_step_inplace(m, batch);
  EXPECT_LT(objective(m, batch), before * 0.5);
}

TEST(Scoring, ParallelMatchesSerial) {
  Hyper h;
  h.init_scale = 0.5;
  const auto m = make_model(3, 256, h);
  std::vector<ScoreRequest> reqs;
  for (int rep = 0; rep < 30; ++rep) {
    for (auto r : requests_from_fixtures()) {
      r.id += "_" + std::to_string(rep);
      reqs.push_back(r);
    }
  }
  const auto a = score_batch_serial(m, reqs);
  const auto b = score_batch_parallel(m, reqs);
  EXPECT_EQ(a, b);
  BuiltinScorer builtin(m);
  EXPECT_EQ(score_batch(builtin, reqs), a);
  for (std::size_t i = 0; i < reqs.size(); ++i) EXPECT_EQ(a[i].id, reqs[i].id);
}

TEST(ExternalScorer, ReturnsResultsInRequestOrder) {
  const auto reqs = requests_from_fixtures();
  for (const char* mode : {"normal", "reverse"}) {
    ExternalScorer ext(mock({mode}));
    const auto out = score_batch(ext, reqs);
    ASSERT_EQ(out.size(), reqs.size());
    for (std::size_t i = 0; i < reqs.size(); ++i) {
      EXPECT_EQ(out[i].id, reqs[i].id);
      EXPECT_DOUBLE_EQ(out[i].loss, mock_loss(reqs[i]));
      EXPECT_DOUBLE_EQ(out[i].max_probability, 0.5);
    }
    // The connection is reusable.
    EXPECT_EQ(score_batch(ext, reqs), out);
  }
}

TEST(ExternalScorer, FailuresMapToScorerFamily) {
  const auto reqs = requests_from_fixtures();
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"die-after", "2"}, "ScorerUnavailable"},
      {{"malformed"}, "ProtocolViolation"},
      {{"silent"}, "ScorerUnavailable"},
  };
  for (const auto& [args, code] : cases) {
    auto cfg = mock(args);
    cfg.timeout_ms = 300;
    ExternalScorer ext(cfg);
    try {
      score_batch(ext, reqs);
      ADD_FAILURE() << args[0];
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << args[0];
      EXPECT_EQ(e.family(), ErrorFamily::Scorer);
    }
  }
  ExternalScorerConfig none;
  EXPECT_THROW(ExternalScorer{none}, Error);
  auto missing = mock({});
  missing.command = {"/nonexistent/scorer"};
  missing.timeout_ms = 300;
  ExternalScorer gone(missing);
  EXPECT_THROW(score_batch(gone, reqs), Error);
}
