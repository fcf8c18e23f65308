#include "hcms/metrics.hpp"

#include <cstdio>

#include "hcms/corpus.hpp"
#include "hcms/errors.hpp"

namespace hcms {

std::size_t ConfusionMatrix::total() const {
  std::size_t n = 0;
  for (const auto& row : counts) {
    for (auto c : row) n += c;
  }
  return n;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < kMetricClasses; ++i) n += counts[i][i];
  return n;
}

std::string_view to_string(F1Average average) {
  return average == F1Average::kMacro ? "macro" : "weighted";
}

namespace {

double ratio(std::size_t num, std::size_t den, std::size_t& zero_divisions) {
  if (den == 0) {
    ++zero_divisions;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricsReport score(std::span<const std::size_t> truth, std::span<const std::size_t> predicted,
                    F1Average headline) {
  if (truth.empty()) throw EvaluationError("cannot score an empty label list");
  if (truth.size() != predicted.size()) {
    throw EvaluationError("label lists differ in length: " + std::to_string(truth.size()) + " vs " +
                          std::to_string(predicted.size()));
  }
  MetricsReport r;
  r.headline = headline;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= kMetricClasses || predicted[i] >= kMetricClasses) {
      throw EvaluationError("label outside the three sentiment classes at position " + std::to_string(i));
    }
    r.confusion.add(truth[i], predicted[i]);
  }

  const std::size_t total = r.confusion.total();
  for (std::size_t c = 0; c < kMetricClasses; ++c) {
    std::size_t predicted_c = 0;
    for (std::size_t t = 0; t < kMetricClasses; ++t) predicted_c += r.confusion.counts[t][c];
    std::size_t support = 0;
    for (auto n : r.confusion.counts[c]) support += n;
    r.support[c] = support;

    const std::size_t tp = r.confusion.counts[c][c];
    auto& s = r.per_class[c];
    s.precision = ratio(tp, predicted_c, r.zero_division_count);
    s.recall = ratio(tp, support, r.zero_division_count);
    if (s.precision + s.recall == 0.0) {
      ++r.zero_division_count;
      s.f1 = 0.0;
    } else {
      s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    }

    const double w = static_cast<double>(support);
    r.macro.precision += s.precision;
    r.macro.recall += s.recall;
    r.macro.f1 += s.f1;
    r.weighted.precision += w * s.precision;
    r.weighted.recall += w * s.recall;
    r.weighted.f1 += w * s.f1;
  }
  const double classes = static_cast<double>(kMetricClasses);
  const double n = static_cast<double>(total);
  r.macro = {r.macro.precision / classes, r.macro.recall / classes, r.macro.f1 / classes};
  r.weighted = {r.weighted.precision / n, r.weighted.recall / n, r.weighted.f1 / n};
  r.accuracy = static_cast<double>(r.confusion.trace()) / static_cast<double>(total);
  return r;
}

std::string format_report(const MetricsReport& report, std::string_view title) {
  std::string out;
  char line[160];
  const auto& h = report.headline_scores();
  std::snprintf(line, sizeof line, "%-28s %10s %10s %10s %10s\n", "Model", "Precision", "Recall", "Acc.", "F1");
  out += line;
  std::snprintf(line, sizeof line, "%-28.28s %10.2f %10.2f %10.2f %10.2f\n", std::string(title).c_str(),
                100.0 * h.precision, 100.0 * h.recall, 100.0 * report.accuracy, 100.0 * h.f1);
  out += line;
  out += "(F1 average: " + std::string(to_string(report.headline)) + ")\n\n";

  std::snprintf(line, sizeof line, "%-10s %10s %10s %10s %8s\n", "class", "precision", "recall", "f1", "support");
  out += line;
  for (std::size_t c = 0; c < kMetricClasses; ++c) {
    const auto& s = report.per_class[c];
    std::snprintf(line, sizeof line, "%-10s %10.4f %10.4f %10.4f %8zu\n",
                  std::string(to_string(static_cast<Sentiment>(c))).c_str(), s.precision, s.recall, s.f1,
                  report.support[c]);
    out += line;
  }
  for (const auto* avg : {"macro", "weighted"}) {
    const auto& s = std::string_view(avg) == "macro" ? report.macro : report.weighted;
    std::snprintf(line, sizeof line, "%-10s %10.4f %10.4f %10.4f %8zu\n", avg, s.precision, s.recall, s.f1,
                  report.confusion.total());
    out += line;
  }
  std::snprintf(line, sizeof line, "%-10s %32.4f %8zu\n\n", "accuracy", report.accuracy, report.confusion.total());
  out += line;

  out += "confusion (rows = true, cols = predicted)\n";
  for (std::size_t t = 0; t < kMetricClasses; ++t) {
    std::snprintf(line, sizeof line, "%-10s %8zu %8zu %8zu\n",
                  std::string(to_string(static_cast<Sentiment>(t))).c_str(), report.confusion.counts[t][0],
                  report.confusion.counts[t][1], report.confusion.counts[t][2]);
    out += line;
  }
  if (report.zero_division_count > 0) {
    out += "warning: " + std::to_string(report.zero_division_count) + " zero-denominator ratio(s) reported as 0\n";
  }
  return out;
}

KeyValueDoc report_document(const MetricsReport& report) {
  KeyValueDoc doc;
  doc.set("f1_average", std::string(to_string(report.headline)));
  const auto& h = report.headline_scores();
  doc.set("precision", h.precision);
  doc.set("recall", h.recall);
  doc.set("accuracy", report.accuracy);
  doc.set("f1", h.f1);
  doc.set("macro.precision", report.macro.precision);
  doc.set("macro.recall", report.macro.recall);
  doc.set("macro.f1", report.macro.f1);
  doc.set("weighted.precision", report.weighted.precision);
  doc.set("weighted.recall", report.weighted.recall);
  doc.set("weighted.f1", report.weighted.f1);
  for (std::size_t c = 0; c < kMetricClasses; ++c) {
    const std::string key = "class." + std::string(to_string(static_cast<Sentiment>(c)));
    doc.set(key + ".precision", report.per_class[c].precision);
    doc.set(key + ".recall", report.per_class[c].recall);
    doc.set(key + ".f1", report.per_class[c].f1);
    doc.set(key + ".support", report.support[c]);
  }
  for (std::size_t t = 0; t < kMetricClasses; ++t) {
    for (std::size_t p = 0; p < kMetricClasses; ++p) {
      doc.set("confusion." + std::to_string(t) + "." + std::to_string(p), report.confusion.counts[t][p]);
    }
  }
  doc.set("examples", report.confusion.total());
  doc.set("zero_divisions", report.zero_division_count);
  return doc;
}

}  // namespace hcms
