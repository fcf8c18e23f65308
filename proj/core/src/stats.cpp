#include "hcms/stats.hpp"

#include <cstdio>

namespace hcms {

namespace {

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

constexpr Sentiment kSentiments[] = {Sentiment::kPositive, Sentiment::kNegative, Sentiment::kNeutral};
constexpr LangTag kLangTags[] = {LangTag::kHin, LangTag::kEng, LangTag::kOther, LangTag::kEmoticon};

}  // namespace

double CorpusStats::sentiment_percent(Sentiment s) const {
  return percent(sentiment[static_cast<std::size_t>(s)], labeled());
}

double CorpusStats::language_percent(LangTag t) const {
  return percent(language[static_cast<std::size_t>(t)], tokens);
}

CorpusStats corpus_stats(std::span<const TweetRecord> records) {
  CorpusStats s;
  s.records = records.size();
  for (const auto& rec : records) {
    if (rec.label) {
      ++s.sentiment[static_cast<std::size_t>(*rec.label)];
    } else {
      ++s.unlabeled;
    }
    for (auto tag : rec.lang_tags) ++s.language[static_cast<std::size_t>(tag)];
    s.tokens += rec.lang_tags.size();
  }
  return s;
}

std::string format_stats(const CorpusStats& stats) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "records: %zu (labeled %zu, unlabeled %zu)\n", stats.records,
                stats.labeled(), stats.unlabeled);
  out += line;
  out += "\nSentiment distribution\n";
  for (auto s : kSentiments) {
    std::snprintf(line, sizeof line, "  %-10s %8zu  %6.2f%%\n", std::string(to_string(s)).c_str(),
                  stats.sentiment[static_cast<std::size_t>(s)], stats.sentiment_percent(s));
    out += line;
  }
  std::snprintf(line, sizeof line, "\nLanguage distribution (%zu tokens)\n", stats.tokens);
  out += line;
  for (auto t : kLangTags) {
    std::snprintf(line, sizeof line, "  %-10s %8zu  %6.2f%%\n", std::string(to_string(t)).c_str(),
                  stats.language[static_cast<std::size_t>(t)], stats.language_percent(t));
    out += line;
  }
  return out;
}

KeyValueDoc stats_document(const CorpusStats& stats) {
  KeyValueDoc doc;
  doc.set("records", stats.records);
  doc.set("labeled", stats.labeled());
  doc.set("unlabeled", stats.unlabeled);
  doc.set("tokens", stats.tokens);
  for (auto s : kSentiments) {
    const std::string key = "sentiment." + std::string(to_string(s));
    doc.set(key + ".count", stats.sentiment[static_cast<std::size_t>(s)]);
    doc.set(key + ".percent", stats.sentiment_percent(s));
  }
  for (auto t : kLangTags) {
    const std::string key = "language." + std::string(to_string(t));
    doc.set(key + ".count", stats.language[static_cast<std::size_t>(t)]);
    doc.set(key + ".percent", stats.language_percent(t));
  }
  return doc;
}

}  // namespace hcms
