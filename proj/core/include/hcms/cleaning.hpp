#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hcms/corpus.hpp"

namespace hcms {

// Each step can be toggled independently. Enabled steps run in the order
// lowercase, links, usernames, hashtags, emoji, contractions, repeats.
struct CleaningConfig {
  bool lowercase = true;
  bool strip_links = true;
  bool strip_usernames = true;
  bool strip_hashtags = true;
  // With strip_hashtags, drop "#word" entirely rather than keeping "word".
  bool remove_hashtag_words = false;
  bool replace_emoji = true;
  bool expand_contractions = true;
  bool collapse_repeats = true;
  // Not a cleaning step: asks the encoder for per-token language one-hots.
  bool append_lang_onehot = false;

  static CleaningConfig none();

  friend bool operator==(const CleaningConfig&, const CleaningConfig&) = default;
};

// Runs the enabled steps over every token. Tokens may split (emoji names,
// multi-word expansions) or vanish; split tokens keep their source's
// language tag. The step sequence is repeated until the tokens stop
// changing, so clean(clean(r)) == clean(r).
TweetRecord clean(const TweetRecord& record, const CleaningConfig& config);

struct CleanedCorpus {
  std::vector<TweetRecord> records;
  std::vector<std::string> dropped_ids;  // records left with no tokens
};

CleanedCorpus clean_corpus(std::span<const TweetRecord> records, const CleaningConfig& config);

// Individual rules, exposed for testing.
std::string collapse_repeats(std::string_view token);
bool is_link(std::string_view token);

// Bundled lookup tables. Keys are lower-case; values are the replacement
// words.
const std::map<std::string, std::vector<std::string>, std::less<>>& contraction_table();
const std::map<char32_t, std::vector<std::string>>& emoji_table();
const std::map<std::string, std::vector<std::string>, std::less<>>& emoticon_table();

}  // namespace hcms
