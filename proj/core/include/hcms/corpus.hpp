#pragma once

// Tweet records and the CONLL container they are stored in:
//
//   meta<TAB><id>[<TAB><label>]
//   <token><TAB><lang_tag>
//   ...
//   <blank line>
//
// Labels are positive|negative|neutral and language tags Hin|Eng|O|EMT,
// both matched case-insensitively.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcms {

enum class LangTag : std::uint8_t { kHin = 0, kEng = 1, kOther = 2, kEmoticon = 3 };
inline constexpr std::size_t kNumLangTags = 4;

// Class order is shared by the dense head, metrics and prediction files.
enum class Sentiment : std::uint8_t { kPositive = 0, kNegative = 1, kNeutral = 2 };

std::string_view to_string(LangTag tag);
std::string_view to_string(Sentiment label);
std::optional<LangTag> parse_lang_tag(std::string_view text);
std::optional<Sentiment> parse_sentiment(std::string_view text);

struct TweetRecord {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<LangTag> lang_tags;  // one per token
  std::optional<Sentiment> label;  // absent for unlabeled data

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

struct ConllOptions {
  // Abort on the first malformed block instead of skipping it.
  bool strict = false;
};

struct SkippedBlock {
  std::size_t line;  // 1-based line of the offending entry
  std::string reason;
};

struct ConllCorpus {
  std::vector<TweetRecord> records;
  std::vector<SkippedBlock> skipped;
};

ConllCorpus parse_conll(std::istream& in, const ConllOptions& options = {});
ConllCorpus parse_conll(std::string_view text, const ConllOptions& options = {});
ConllCorpus read_conll_file(const std::filesystem::path& path, const ConllOptions& options = {});

std::string serialize_conll(std::span<const TweetRecord> records);
void write_conll_file(const std::filesystem::path& path, std::span<const TweetRecord> records);

}  // namespace hcms
