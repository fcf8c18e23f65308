#pragma once

#include <filesystem>
#include <vector>

#include "hcms/cleaning.hpp"
#include "hcms/corpus.hpp"
#include "hcms/trainer.hpp"
#include "hcms/vocabulary.hpp"

namespace hcms::testing {

inline std::filesystem::path data_dir() { return HCMS_DATA_DIR; }
inline std::filesystem::path mini_corpus_path() { return data_dir() / "mini_corpus.conll"; }

struct EncodedCorpus {
  Vocabulary vocab;
  std::vector<LabeledTweet> examples;
  std::size_t max_length = 0;
};

// Cleans with the default pipeline and encodes against a vocabulary built
// from the same records.
inline EncodedCorpus encode_corpus(const std::vector<TweetRecord>& raw, const CleaningConfig& cleaning = {}) {
  EncodedCorpus out;
  const auto cleaned = clean_corpus(raw, cleaning).records;
  out.vocab = build_vocab(cleaned);
  for (const auto& r : cleaned) {
    if (!r.label) continue;
    out.examples.push_back({encode(r, out.vocab, cleaning), static_cast<std::size_t>(*r.label)});
    out.max_length = std::max(out.max_length, r.tokens.size());
  }
  return out;
}

inline EncodedCorpus load_mini_corpus() { return encode_corpus(read_conll_file(mini_corpus_path()).records); }

}  // namespace hcms::testing
