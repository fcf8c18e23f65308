#include "hcms/vocabulary.hpp"

#include <algorithm>
#include <map>

#include "hcms/errors.hpp"

namespace hcms {

Vocabulary::Vocabulary() : tokens_{std::string(kPadToken), std::string(kUnkToken)} {}

void Vocabulary::add(std::string token) {
  const auto id = static_cast<TokenId>(tokens_.size());
  if (!index_.emplace(token, id).second) throw VocabularyError("duplicate vocabulary token \"" + token + "\"");
  tokens_.push_back(std::move(token));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < 2 || tokens[0] != kPadToken || tokens[1] != kUnkToken) {
    throw VocabularyError("vocabulary must start with the reserved PAD and UNK entries");
  }
  Vocabulary v;
  for (std::size_t i = 2; i < tokens.size(); ++i) v.add(std::move(tokens[i]));
  return v;
}

TokenId Vocabulary::lookup(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::token(TokenId id) const {
  if (id >= tokens_.size()) {
    throw VocabularyError("token id " + std::to_string(id) + " outside vocabulary of size " +
                          std::to_string(tokens_.size()));
  }
  return tokens_[id];
}

Vocabulary build_vocab(std::span<const TweetRecord> records, std::size_t min_count) {
  std::map<std::string, std::size_t> counts;
  for (const auto& rec : records) {
    for (const auto& tok : rec.tokens) ++counts[tok];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (auto& [tok, n] : counts) {
    if (n >= min_count) ranked.emplace_back(tok, n);
  }
  // counts is already lexicographic, so a stable sort on frequency keeps
  // the tie-break.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens{std::string(Vocabulary::kPadToken), std::string(Vocabulary::kUnkToken)};
  for (auto& [tok, n] : ranked) tokens.push_back(std::move(tok));
  return Vocabulary::from_tokens(std::move(tokens));
}

EncodedTweet encode(const TweetRecord& record, const Vocabulary& vocab, const CleaningConfig& config) {
  EncodedTweet out;
  out.ids.reserve(record.tokens.size());
  for (const auto& tok : record.tokens) out.ids.push_back(vocab.lookup(tok));
  if (config.append_lang_onehot) {
    out.lang.reserve(record.lang_tags.size());
    for (auto tag : record.lang_tags) out.lang.push_back(static_cast<std::uint8_t>(tag));
  }
  return out;
}

std::array<double, kNumLangTags> lang_onehot(LangTag tag) {
  std::array<double, kNumLangTags> v{};
  v[static_cast<std::size_t>(tag)] = 1.0;
  return v;
}

}  // namespace hcms
