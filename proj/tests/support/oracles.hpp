#pragma once

// Reference implementations written as plain loops, independent of the
// library kernels they are compared against.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "hcms/layers.hpp"
#include "hcms/metrics.hpp"

namespace hcms::testing {

// Pairwise additive attention computed one (t, t') pair at a time.
inline std::vector<std::vector<double>> attention_oracle(const SelfAttentionLayer& layer,
                                                         const std::vector<std::vector<double>>& c) {
  const std::size_t v = c.size();
  const std::size_t d = c.empty() ? 0 : c[0].size();
  const std::size_t h = layer.hidden_bias.value.size();
  const auto& wt = layer.query_weight.value;
  const auto& wc = layer.key_weight.value;
  const auto& bt = layer.hidden_bias.value;
  const auto& wa = layer.score_weight.value;
  const double ba = layer.score_bias.value[0];
  const bool include_self = layer.config().include_self;
  const bool squash = layer.config().sigmoid_scores;

  std::vector<std::vector<double>> out(v, std::vector<double>(d, 0.0));
  for (std::size_t t = 0; t < v; ++t) {
    std::vector<std::size_t> keys;
    std::vector<double> e;
    for (std::size_t tp = 0; tp < v; ++tp) {
      if (tp == t && !include_self) continue;
      double score = ba;
      for (std::size_t j = 0; j < h; ++j) {
        double pre = bt[j];
        for (std::size_t i = 0; i < d; ++i) pre += c[t][i] * wt.at(i, j) + c[tp][i] * wc.at(i, j);
        score += std::tanh(pre) * wa.at(j, 0);
      }
      keys.push_back(tp);
      e.push_back(squash ? 1.0 / (1.0 + std::exp(-score)) : score);
    }
    double peak = e[0];
    for (double x : e) peak = std::max(peak, x);
    double total = 0.0;
    for (double& x : e) total += (x = std::exp(x - peak));
    for (std::size_t n = 0; n < keys.size(); ++n) {
      for (std::size_t i = 0; i < d; ++i) out[t][i] += e[n] / total * c[keys[n]][i];
    }
  }
  return out;
}

struct OracleScores {
  std::array<std::size_t, kMetricClasses> tp{}, fp{}, fn{}, support{};
  std::array<double, kMetricClasses> precision{}, recall{}, f1{};
  double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
  double weighted_precision = 0, weighted_recall = 0, weighted_f1 = 0;
  double accuracy = 0;
};

// Counts every quantity straight from the label pairs.
inline OracleScores metrics_oracle(const std::vector<std::size_t>& truth, const std::vector<std::size_t>& pred) {
  OracleScores o;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == pred[i]) ++correct;
    for (std::size_t c = 0; c < kMetricClasses; ++c) {
      const bool is_true = truth[i] == c;
      const bool is_pred = pred[i] == c;
      if (is_true) ++o.support[c];
      if (is_true && is_pred) ++o.tp[c];
      if (!is_true && is_pred) ++o.fp[c];
      if (is_true && !is_pred) ++o.fn[c];
    }
  }
  const double n = static_cast<double>(truth.size());
  for (std::size_t c = 0; c < kMetricClasses; ++c) {
    const std::size_t pd = o.tp[c] + o.fp[c];
    const std::size_t rd = o.tp[c] + o.fn[c];
    o.precision[c] = pd == 0 ? 0.0 : static_cast<double>(o.tp[c]) / static_cast<double>(pd);
    o.recall[c] = rd == 0 ? 0.0 : static_cast<double>(o.tp[c]) / static_cast<double>(rd);
    const double pr = o.precision[c] + o.recall[c];
    o.f1[c] = pr == 0.0 ? 0.0 : 2.0 * o.precision[c] * o.recall[c] / pr;
  }
  o.macro_precision = (o.precision[0] + o.precision[1] + o.precision[2]) / 3.0;
  o.macro_recall = (o.recall[0] + o.recall[1] + o.recall[2]) / 3.0;
  o.macro_f1 = (o.f1[0] + o.f1[1] + o.f1[2]) / 3.0;
  auto weighted = [&](const std::array<double, kMetricClasses>& s) {
    double acc = 0.0;
    for (std::size_t c = 0; c < kMetricClasses; ++c) acc += static_cast<double>(o.support[c]) * s[c];
    return acc / n;
  };
  o.weighted_precision = weighted(o.precision);
  o.weighted_recall = weighted(o.recall);
  o.weighted_f1 = weighted(o.f1);
  o.accuracy = static_cast<double>(correct) / n;
  return o;
}

// Field-by-field equality with the library report; counts exactly, scores
// bit-for-bit.
inline bool matches_oracle(const MetricsReport& r, const OracleScores& o) {
  for (std::size_t c = 0; c < kMetricClasses; ++c) {
    std::size_t col = 0;
    for (std::size_t t = 0; t < kMetricClasses; ++t) col += r.confusion.counts[t][c];
    if (r.confusion.counts[c][c] != o.tp[c] || col - o.tp[c] != o.fp[c] || r.support[c] != o.support[c] ||
        r.support[c] - o.tp[c] != o.fn[c]) {
      return false;
    }
    if (r.per_class[c].precision != o.precision[c] || r.per_class[c].recall != o.recall[c] ||
        r.per_class[c].f1 != o.f1[c]) {
      return false;
    }
  }
  return r.macro.precision == o.macro_precision && r.macro.recall == o.macro_recall && r.macro.f1 == o.macro_f1 &&
         r.weighted.precision == o.weighted_precision && r.weighted.recall == o.weighted_recall &&
         r.weighted.f1 == o.weighted_f1 && r.accuracy == o.accuracy;
}

}  // namespace hcms::testing
