#include <gtest/gtest.h>

#include <numeric>

#include "hcms/errors.hpp"
#include "hcms/metrics.hpp"
#include "hcms/random.hpp"
#include "oracles.hpp"

namespace hcms {
namespace {

using Labels = std::vector<std::size_t>;

TEST(Metrics, PerfectPredictions) {
  const Labels truth{0, 1, 2, 2, 1, 0};
  const auto r = score(truth, truth);
  EXPECT_EQ(r.accuracy, 1.0);
  for (const auto& c : r.per_class) EXPECT_EQ(c.f1, 1.0);
  EXPECT_EQ(r.macro.f1, 1.0);
  EXPECT_EQ(r.weighted.f1, 1.0);
}

TEST(Metrics, HandTallyCase) {
  const auto r = score(Labels{0, 0, 1, 2}, Labels{0, 1, 1, 2});
  EXPECT_EQ(r.accuracy, 0.75);
  EXPECT_EQ(r.per_class[0].precision, 1.0);
  EXPECT_EQ(r.per_class[0].recall, 0.5);
  EXPECT_NEAR(r.per_class[0].f1, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.macro.f1, 7.0 / 9.0, 1e-12);
  EXPECT_EQ(r.confusion.counts[0][1], 1u);
  EXPECT_EQ(r.confusion.total(), 4u);
}

TEST(Metrics, AbsentClassScoresZeroAndCarriesNoWeight) {
  const auto r = score(Labels{0, 1, 0, 1}, Labels{0, 1, 1, 1});
  EXPECT_EQ(r.per_class[2].precision, 0.0);
  EXPECT_EQ(r.per_class[2].recall, 0.0);
  EXPECT_EQ(r.per_class[2].f1, 0.0);
  EXPECT_EQ(r.support[2], 0u);
  EXPECT_EQ(r.zero_division_count, 3u);
  const double expected = (2.0 * r.per_class[0].f1 + 2.0 * r.per_class[1].f1) / 4.0;
  EXPECT_DOUBLE_EQ(r.weighted.f1, expected);
}

TEST(Metrics, Errors) {
  EXPECT_THROW(score(Labels{}, Labels{}), EvaluationError);
  EXPECT_THROW(score(Labels{0, 1}, Labels{0}), EvaluationError);
  EXPECT_THROW(score(Labels{3}, Labels{0}), EvaluationError);
}

Labels random_labels(Rng& rng, std::size_t n, std::size_t classes) {
  Labels out(n);
  for (auto& l : out) l = rng.below(classes);
  return out;
}

TEST(Metrics, MatchesBruteForceOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    // Some cases draw from fewer classes so zero denominators show up.
    const std::size_t classes = 1 + rng.below(3);
    const Labels truth = random_labels(rng, n, classes);
    const Labels pred = random_labels(rng, n, 1 + rng.below(3));
    EXPECT_TRUE(testing::matches_oracle(score(truth, pred), testing::metrics_oracle(truth, pred))) << trial;
  }
}

TEST(Metrics, MacroF1InvariantUnderJointPermutation) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    Labels truth = random_labels(rng, n, 3), pred = random_labels(rng, n, 3);
    const double base = score(truth, pred).macro.f1;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(perm));
    Labels t2(n), p2(n);
    for (std::size_t i = 0; i < n; ++i) {
      t2[i] = truth[perm[i]];
      p2[i] = pred[perm[i]];
    }
    EXPECT_EQ(score(t2, p2).macro.f1, base);
  }
}

TEST(Metrics, WeightedEqualsMacroForEqualSupport) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t per_class = 1 + rng.below(10);
    Labels truth;
    for (std::size_t c = 0; c < 3; ++c) truth.insert(truth.end(), per_class, c);
    const Labels pred = random_labels(rng, truth.size(), 3);
    const auto r = score(truth, pred);
    EXPECT_NEAR(r.weighted.f1, r.macro.f1, 1e-12);
  }
}

TEST(Metrics, ValuesStayInUnitInterval) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    const auto r = score(random_labels(rng, n, 3), random_labels(rng, n, 3));
    for (double v : {r.accuracy, r.macro.precision, r.macro.recall, r.macro.f1, r.weighted.precision,
                     r.weighted.recall, r.weighted.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_EQ(r.accuracy, static_cast<double>(r.confusion.trace()) / static_cast<double>(n));
  }
}

TEST(Metrics, ReportRecordsAveragingChoice) {
  const auto r = score(Labels{0, 1, 2}, Labels{0, 1, 1});
  const std::string text = format_report(r, "HCMS");
  EXPECT_NE(text.find("Precision"), std::string::npos);
  EXPECT_NE(text.find("F1 average: weighted"), std::string::npos);
  const auto doc = report_document(r);
  EXPECT_EQ(doc.get("f1_average"), "weighted");
  const auto macro = score(Labels{0, 1, 2}, Labels{0, 1, 1}, F1Average::kMacro);
  EXPECT_EQ(macro.headline_scores().f1, macro.macro.f1);
}

}  // namespace
}  // namespace hcms
