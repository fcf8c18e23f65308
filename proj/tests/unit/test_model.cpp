#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "gradient_suite.hpp"
#include "hcms/errors.hpp"
#include "hcms/loss.hpp"
#include "hcms/model.hpp"

namespace hcms {
namespace {

ModelConfig tiny_config() {
  ModelConfig cfg;
  cfg.vocab_size = 10;
  cfg.embed_dim = 4;
  cfg.seq_len = 12;
  cfg.conv.filters = 3;
  cfg.conv.kernel = 2;
  cfg.attn.hidden = 5;
  return cfg;
}

EncodedTweet random_tweet(std::size_t length, std::size_t vocab, Rng& rng) {
  EncodedTweet t;
  for (std::size_t i = 0; i < length; ++i) t.ids.push_back(static_cast<TokenId>(1 + rng.below(vocab - 1)));
  return t;
}

TEST(Model, MinimumSequenceLength) {
  ModelConfig cfg = tiny_config();
  // conv needs 2 rows, pool 2 needs 2 conv outputs, attention needs 2 pooled rows
  EXPECT_EQ(min_sequence_length(cfg), 5u);
  cfg.attention = false;
  EXPECT_EQ(min_sequence_length(cfg), 3u);
  cfg.conv.kernel = 8;
  EXPECT_EQ(min_sequence_length(cfg), 9u);
  cfg.attention = true;
  EXPECT_EQ(min_sequence_length(cfg), 11u);
}

TEST(Model, RejectsInconsistentConfig) {
  ModelConfig cfg = tiny_config();
  cfg.seq_len = 3;
  EXPECT_THROW(Model(cfg, 1), ConfigError);
  cfg = tiny_config();
  cfg.conv.global_pool = true;
  EXPECT_THROW(Model(cfg, 1), ConfigError);
  cfg.attn.include_self = true;
  EXPECT_NO_THROW(Model(cfg, 1));
}

TEST(Model, HeadWidthFollowsSequenceLength) {
  ModelConfig cfg = tiny_config();
  Model model(cfg, 1);
  EXPECT_EQ(model.head_width(), 5u * 3u);
  cfg.conv.global_pool = true;
  cfg.attention = false;
  EXPECT_EQ(Model(cfg, 1).head_width(), 3u);
}

TEST(Model, FitLengthPadsAndTruncates) {
  ModelConfig cfg = tiny_config();
  cfg.lang_features = true;
  Model model(cfg, 1);
  EncodedTweet shortt{{3, 4}, {0, 1}};
  const auto padded = model.fit_length(shortt);
  ASSERT_EQ(padded.ids.size(), 12u);
  EXPECT_EQ(padded.ids[1], 4u);
  EXPECT_EQ(padded.ids[2], kPadId);
  EXPECT_EQ(padded.lang[2], kNoLang);
  EncodedTweet longt;
  longt.ids.assign(20, 5);
  longt.lang.assign(20, 1);
  EXPECT_EQ(model.fit_length(longt).ids.size(), 12u);
  EXPECT_EQ(model.fit_length(longt).lang.size(), 12u);
}

TEST(Model, LanguageFeaturesWidenInput) {
  ModelConfig cfg = tiny_config();
  cfg.lang_features = true;
  Model model(cfg, 2);
  EXPECT_EQ(model.input_dim(), 8u);
  EncodedTweet t{{1, 2, 3}, {0, 3, kNoLang}};
  const auto trace = model.forward(model.fit_length(t));
  EXPECT_EQ(trace.features.cols(), 8u);
  EXPECT_EQ(trace.features.at(0, 4), 1.0);
  EXPECT_EQ(trace.features.at(1, 7), 1.0);
  for (std::size_t j = 4; j < 8; ++j) EXPECT_EQ(trace.features.at(2, j), 0.0);
}

TEST(Model, DeterministicForSeed) {
  Rng rng(3);
  const auto tweet = random_tweet(9, 10, rng);
  const Tensor a = Model(tiny_config(), 42).predict(tweet);
  const Tensor b = Model(tiny_config(), 42).predict(tweet);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)), 0);
  EXPECT_NE(Model(tiny_config(), 43).predict(tweet), a);
}

TEST(Model, ParameterOrderIsStable) {
  Model model(tiny_config(), 1);
  std::vector<std::string> names;
  for (const auto& p : model.parameters()) names.push_back(p.name);
  EXPECT_EQ(names, (std::vector<std::string>{"embedding.table", "conv.filters", "conv.bias",
                                             "attention.query_weight", "attention.key_weight",
                                             "attention.hidden_bias", "attention.score_weight",
                                             "attention.score_bias", "head.weight", "head.bias"}));
}

TEST(Model, AttentionDisabledIsDirectComposition) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    ModelConfig cfg = tiny_config();
    cfg.attention = false;
    Model model(cfg, rng.next());
    for (auto& ref : model.parameters()) {
      for (auto& x : ref.param->value.values()) x = rng.uniform(-1, 1);
    }
    for (auto& x : model.embedding().table.value.row(0)) x = 0.0;
    const auto tweet = model.fit_length(random_tweet(1 + rng.below(12), 10, rng));
    const Tensor probs = model.forward(tweet).probs();

    const Tensor x = model.embedding().forward(tweet.ids);
    const Tensor c = model.conv().forward(x).output;
    const Tensor expected = model.head().forward(c.reshaped({c.size()})).probs;
    EXPECT_EQ(probs, expected);
  }
}

TEST(Model, PredictionsAreDistributions) {
  Rng rng(5);
  Model model(tiny_config(), 5);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor p = model.predict(random_tweet(1 + rng.below(20), 10, rng));
    double sum = 0.0;
    for (double v : p.values()) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-6);
    EXPECT_LT(argmax(p), kNumClasses);
  }
}

TEST(Model, EndToEndGradients) {
  const auto r = testing::check_model(100, 31);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, worst " << r.worst << ": " << r.first_failure;
  EXPECT_LT(r.kinks * 20, r.checked + r.kinks);
}

TEST(Model, PadRowNeverReceivesGradient) {
  Rng rng(6);
  Model model(tiny_config(), 6);
  EncodedTweet t = model.fit_length(random_tweet(5, 10, rng));
  const auto trace = model.forward(t);
  model.backward(trace, cross_entropy_logit_grad(1, trace.probs()));
  for (double g : model.embedding().table.grad.row(0)) EXPECT_EQ(g, 0.0);
}

// With global pooling and no attention the head width does not depend on
// the sequence length, so a model with a longer sequence shares every
// parameter. Extra PAD columns must not move the gradient of real rows.
TEST(Model, PaddingInvarianceUnderGlobalPool) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    ModelConfig cfg = tiny_config();
    cfg.attention = false;
    cfg.conv.global_pool = true;
    cfg.seq_len = 8;
    const std::uint64_t seed = rng.next();
    Model short_model(cfg, seed);
    cfg.seq_len = 8 + 1 + rng.below(12);
    Model long_model(cfg, seed);
    for (std::size_t p = 0; p < short_model.parameters().size(); ++p) {
      auto& a = *short_model.parameters()[p].param;
      auto& b = *long_model.parameters()[p].param;
      for (std::size_t i = 0; i < a.value.size(); ++i) {
        a.value[i] = rng.uniform(-1, 1);
        b.value[i] = a.value[i];
      }
    }
    for (auto* m : {&short_model, &long_model}) {
      for (auto& x : m->embedding().table.value.row(0)) x = 0.0;
      for (auto& x : m->conv().bias.value.values()) x = -std::abs(x);
    }
    const auto tweet = random_tweet(2 + rng.below(7), 10, rng);
    const std::size_t label = rng.below(3);
    for (auto* m : {&short_model, &long_model}) {
      const auto trace = m->forward(m->fit_length(tweet));
      m->backward(trace, cross_entropy_logit_grad(label, trace.probs()));
    }
    EXPECT_EQ(short_model.predict(tweet), long_model.predict(tweet));
    for (std::size_t r = 1; r < 10; ++r) {
      const auto ga = short_model.embedding().table.grad.row(r);
      const auto gb = long_model.embedding().table.grad.row(r);
      for (std::size_t j = 0; j < ga.size(); ++j) EXPECT_EQ(ga[j], gb[j]) << "row " << r;
    }
  }
}

}  // namespace
}  // namespace hcms
