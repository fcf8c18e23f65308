#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hcms/cleaning.hpp"
#include "hcms/corpus.hpp"
#include "hcms/encoded.hpp"

namespace hcms {

// Bidirectional token <-> index map. Index 0 is PAD and 1 is UNK; real
// tokens occupy 2.. and are ordered by descending frequency, ties broken
// lexicographically.
class Vocabulary {
 public:
  static constexpr std::string_view kPadToken = "<pad>";
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocabulary();

  // Rebuilds from an index-ordered token list (as stored in checkpoints).
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  TokenId lookup(std::string_view token) const;
  const std::string& token(TokenId id) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

 private:
  void add(std::string token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

// Tokens seen fewer than min_count times are left out and encode as UNK.
Vocabulary build_vocab(std::span<const TweetRecord> records, std::size_t min_count = 1);

// Ids for an already-cleaned record, plus language indices when
// config.append_lang_onehot is set.
EncodedTweet encode(const TweetRecord& record, const Vocabulary& vocab, const CleaningConfig& config);

// One-hot in HIN, ENG, O, EMT order.
std::array<double, kNumLangTags> lang_onehot(LangTag tag);

}  // namespace hcms
