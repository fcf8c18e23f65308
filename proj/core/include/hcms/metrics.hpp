#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "hcms/config.hpp"

namespace hcms {

inline constexpr std::size_t kMetricClasses = 3;

// counts[true][predicted]
struct ConfusionMatrix {
  std::array<std::array<std::size_t, kMetricClasses>, kMetricClasses> counts{};

  void add(std::size_t truth, std::size_t predicted) { ++counts[truth][predicted]; }
  std::size_t total() const;
  std::size_t trace() const;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

enum class F1Average { kMacro, kWeighted };
std::string_view to_string(F1Average average);

struct MetricsReport {
  ConfusionMatrix confusion;
  std::array<ClassScores, kMetricClasses> per_class{};
  std::array<std::size_t, kMetricClasses> support{};
  ClassScores macro;
  ClassScores weighted;
  double accuracy = 0.0;
  // Ratios whose denominator was zero and were defined as 0.
  std::size_t zero_division_count = 0;
  F1Average headline = F1Average::kWeighted;

  const ClassScores& headline_scores() const { return headline == F1Average::kMacro ? macro : weighted; }
};

// Labels are class indices in [0, 3). Throws EvaluationError on empty or
// mismatched inputs.
MetricsReport score(std::span<const std::size_t> truth, std::span<const std::size_t> predicted,
                    F1Average headline = F1Average::kWeighted);

// Summary row with Precision, Recall, Acc., F1 (percent) followed
// by the per-class breakdown and confusion matrix.
std::string format_report(const MetricsReport& report, std::string_view title);
KeyValueDoc report_document(const MetricsReport& report);

}  // namespace hcms
