#pragma once

#include <array>
#include <span>
#include <string>

#include "hcms/config.hpp"
#include "hcms/corpus.hpp"

namespace hcms {

// Sentiment and language-tag distribution of a corpus.
struct CorpusStats {
  std::size_t records = 0;
  std::size_t unlabeled = 0;
  std::size_t tokens = 0;
  std::array<std::size_t, 3> sentiment{};
  std::array<std::size_t, kNumLangTags> language{};

  std::size_t labeled() const { return records - unlabeled; }
  // Percent of labeled records / of tokens; 0 for an empty population.
  double sentiment_percent(Sentiment s) const;
  double language_percent(LangTag t) const;
};

CorpusStats corpus_stats(std::span<const TweetRecord> records);
std::string format_stats(const CorpusStats& stats);
KeyValueDoc stats_document(const CorpusStats& stats);

}  // namespace hcms
