#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gradcheck.hpp"
#include "hcms/errors.hpp"
#include "hcms/loss.hpp"
#include "hcms/model.hpp"
#include "hcms/ops.hpp"
#include "hcms/optimizer.hpp"

namespace hcms {
namespace {

TEST(CrossEntropy, Examples) {
  EXPECT_EQ(cross_entropy(one_hot(0, 3), Tensor::vector({1, 0, 0})), 0.0);
  EXPECT_NEAR(cross_entropy(one_hot(0, 3), Tensor::vector({0.5, 0.25, 0.25})), std::log(2.0), 1e-9);
  EXPECT_NEAR(cross_entropy(one_hot(2, 3), Tensor::vector({1.0 / 3, 1.0 / 3, 1.0 / 3})), std::log(3.0), 1e-9);
  EXPECT_NEAR(cross_entropy(0, Tensor::vector({0.5, 0.25, 0.25})), 0.693147, 1e-6);
  EXPECT_NEAR(cross_entropy(2, Tensor::vector({1.0 / 3, 1.0 / 3, 1.0 / 3})), 1.098612, 1e-6);
}

TEST(CrossEntropy, FloorKeepsLossFinite) {
  EXPECT_NEAR(cross_entropy(1, Tensor::vector({1, 0, 0})), -std::log(kProbabilityFloor), 1e-9);
}

TEST(CrossEntropy, RejectsNonOneHotTargets) {
  const Tensor p = Tensor::vector({0.2, 0.3, 0.5});
  EXPECT_THROW(cross_entropy(Tensor::vector({0.5, 0.5, 0}), p), LabelError);
  EXPECT_THROW(cross_entropy(Tensor::vector({0, 0, 0}), p), LabelError);
  EXPECT_THROW(cross_entropy(Tensor::vector({1, 1, 0}), p), LabelError);
  EXPECT_THROW(cross_entropy(Tensor::vector({1, 0}), p), DimensionError);
  EXPECT_THROW(cross_entropy(3, p), LabelError);
}

TEST(CrossEntropy, NonNegativeAndZeroOnlyAtCertainty) {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const Tensor probs = ops::softmax(testing::random_tensor({3}, rng, -10, 10));
    const std::size_t label = rng.below(3);
    const double loss = cross_entropy(label, probs);
    EXPECT_GE(loss, 0.0);
    if (probs[label] < 1.0) EXPECT_GT(loss, 0.0);
  }
}

TEST(CrossEntropy, FusedGradientMatchesComposition) {
  Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const Tensor probs = ops::softmax(testing::random_tensor({3}, rng, -4, 4));
    const std::size_t label = rng.below(3);
    const Tensor fused = cross_entropy_logit_grad(label, probs);
    const Tensor composed = ops::softmax_backward(probs, cross_entropy_prob_grad(label, probs));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(fused[i], composed[i], 1e-8);
  }
}

TEST(Adam, ZeroGradientLeavesValue) {
  Parameter p(Tensor::vector({1.5, -2.0}));
  adam_step(p, {});
  EXPECT_EQ(p.value, Tensor::vector({1.5, -2.0}));
  EXPECT_EQ(p.step, 1u);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  Parameter p(Tensor::vector({0.0}));
  p.grad[0] = 1.0;
  adam_step(p, {});
  EXPECT_NEAR(-p.value[0], 0.01 / (1.0 + 1e-7), 1e-15);
  EXPECT_EQ(p.grad[0], 0.0);
}

// The first update is lr * g / (|g| + eps): the epsilon term is the only
// dependence on the gradient scale.
TEST(Adam, FirstStepFollowsClosedForm) {
  Rng rng(3);
  const OptimizerConfig cfg;
  for (int trial = 0; trial < 1000; ++trial) {
    const double magnitude = std::pow(10.0, rng.uniform(-6, 6));
    const double g = rng.below(2) == 0 ? magnitude : -magnitude;
    Parameter p(Tensor::vector({0.0}));
    p.grad[0] = g;
    adam_step(p, cfg);
    const double update = -p.value[0];
    EXPECT_GT(update * g, 0.0);
    const double expected = cfg.lr * magnitude / (magnitude + cfg.epsilon);
    EXPECT_NEAR(std::abs(update) / expected, 1.0, 1e-12) << "g = " << g;
    if (magnitude >= 1e-2) EXPECT_LE(std::abs(std::abs(update) - cfg.lr) / cfg.lr, 1e-5) << "g = " << g;
  }
}

TEST(Adam, TwoConstantStepsRecoverSecondMoment) {
  for (double g : {1.0, -0.3, 7.25}) {
    Parameter p(Tensor::vector({0.0}));
    const OptimizerConfig cfg;
    for (int i = 0; i < 2; ++i) {
      p.grad[0] = g;
      adam_step(p, cfg);
    }
    EXPECT_EQ(p.step, 2u);
    // Exact in real arithmetic; the double evaluation is off by a few ulps.
    EXPECT_NEAR(p.v[0] / (1.0 - std::pow(cfg.beta2, 2.0)) / (g * g), 1.0, 4e-15);
    EXPECT_NEAR(p.m[0] / (1.0 - std::pow(cfg.beta1, 2.0)) / g, 1.0, 4e-15);
  }
}

TEST(Adam, ConfigValidation) {
  EXPECT_NO_THROW(OptimizerConfig{}.validate());
  EXPECT_THROW((OptimizerConfig{0.0}.validate()), ConfigError);
  EXPECT_NO_THROW((OptimizerConfig{0.0}.validate(true)));
  EXPECT_THROW((OptimizerConfig{0.01, 1.0}.validate()), ConfigError);
  EXPECT_THROW((OptimizerConfig{0.01, 0.9, 0.0}.validate()), ConfigError);
  EXPECT_THROW((OptimizerConfig{0.01, 0.9, 0.99, 0.0}.validate()), ConfigError);
}

ModelConfig small_config(std::size_t vocab, std::size_t seq_len) {
  ModelConfig cfg;
  cfg.vocab_size = vocab;
  cfg.embed_dim = 8;
  cfg.seq_len = seq_len;
  cfg.conv.filters = 6;
  cfg.conv.kernel = 3;
  cfg.attn.hidden = 4;
  return cfg;
}

std::vector<LabeledTweet> random_examples(std::size_t n, std::size_t vocab, Rng& rng) {
  std::vector<LabeledTweet> out;
  for (std::size_t i = 0; i < n; ++i) {
    LabeledTweet ex;
    for (std::size_t t = 0, len = 3 + rng.below(10); t < len; ++t) {
      ex.tweet.ids.push_back(static_cast<TokenId>(1 + rng.below(vocab - 1)));
    }
    ex.label = rng.below(3);
    out.push_back(ex);
  }
  return out;
}

TEST(Train, EmptyCorpusIsDataError) {
  Model model(small_config(10, 12), 1);
  EXPECT_THROW(train(model, {}, {}, {}, {}), DataError);
}

TEST(Train, ZeroLearningRateLeavesParameters) {
  Rng rng(4);
  Model model(small_config(10, 12), 4);
  const auto examples = random_examples(1, 10, rng);
  std::vector<Tensor> before;
  for (const auto& p : model.parameters()) before.push_back(p.param->value);
  TrainConfig cfg;
  cfg.epochs = 1;
  OptimizerConfig opt;
  opt.lr = 0.0;
  train(model, examples, {}, cfg, opt);
  const auto after = model.parameters();
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(after[i].param->value, before[i]) << after[i].name;
}

TEST(Train, SingleStepDecreasesLoss) {
  Rng rng(5);
  OptimizerConfig opt;
  opt.lr = 1e-4;
  for (int trial = 0; trial < 30; ++trial) {
    Model model(small_config(10, 12), rng.next());
    const auto ex = random_examples(1, 10, rng);
    const double before = mean_loss(model, ex);
    const LabeledTweet* batch[] = {&ex[0]};
    EXPECT_DOUBLE_EQ(train_step(model, batch, opt), before);
    EXPECT_LT(mean_loss(model, ex), before);
  }
}

TEST(Train, IdenticalRunsGiveIdenticalLogs) {
  Rng rng(6);
  const auto examples = random_examples(24, 12, rng);
  const auto val = random_examples(8, 12, rng);
  TrainConfig cfg;
  cfg.epochs = 4;
  cfg.batch_size = 5;
  std::string logs[2];
  for (auto& log : logs) {
    Model model(small_config(12, 14), 99);
    log = format_epoch_log(train(model, examples, val, cfg, {}).epochs);
  }
  EXPECT_EQ(logs[0], logs[1]);
  EXPECT_NE(logs[0].find("epoch\ttrain_loss"), std::string::npos);
}

TEST(Train, KeepsBestEpochParameters) {
  Rng rng(7);
  const auto examples = random_examples(20, 12, rng);
  const auto val = random_examples(10, 12, rng);
  TrainConfig cfg;
  cfg.epochs = 6;
  cfg.batch_size = 4;
  Model model(small_config(12, 14), 7);
  const auto result = train(model, examples, val, cfg, {});
  ASSERT_EQ(result.epochs.size(), 6u);
  double best = -1.0;
  for (const auto& e : result.epochs) best = std::max(best, *e.val_f1);
  EXPECT_EQ(result.best_score, best);
  EXPECT_EQ(*result.epochs[result.best_epoch - 1].val_f1, best);
  EXPECT_EQ(evaluate(model, val).weighted.f1, best);
}

TEST(Train, StopsAtTargetAccuracy) {
  Rng rng(8);
  const auto examples = random_examples(6, 12, rng);
  TrainConfig cfg;
  cfg.epochs = 500;
  cfg.stop_at_train_accuracy = 1.0;
  Model model(small_config(12, 14), 8);
  const auto result = train(model, examples, {}, cfg, {});
  EXPECT_LT(result.epochs.size(), 500u);
  EXPECT_EQ(result.epochs.back().train_accuracy, 1.0);
}

TEST(Train, OverfitsSixteenExamples) {
  auto corpus = testing::load_mini_corpus();
  corpus.examples.resize(16);
  ModelConfig mc = small_config(corpus.vocab.size(), std::max<std::size_t>(corpus.max_length, 11));
  mc.embed_dim = 16;
  mc.conv.filters = 16;
  Model model(mc, 3);
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.batch_size = 4;
  const auto result = train(model, corpus.examples, {}, cfg, {});
  EXPECT_EQ(evaluate(model, corpus.examples).accuracy, 1.0);
  EXPECT_EQ(result.best_score, 1.0);
}

TEST(Train, RejectsInvalidConfig) {
  Model model(small_config(10, 12), 1);
  Rng rng(9);
  const auto ex = random_examples(2, 10, rng);
  TrainConfig cfg;
  cfg.batch_size = 0;
  EXPECT_THROW(train(model, ex, {}, cfg, {}), ConfigError);
  cfg = {};
  cfg.epochs = 0;
  EXPECT_THROW(train(model, ex, {}, cfg, {}), ConfigError);
}

}  // namespace
}  // namespace hcms
