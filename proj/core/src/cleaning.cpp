#include "hcms/cleaning.hpp"

#include <string>

#include "text_util.hpp"

namespace hcms::detail {
extern const std::string_view kEmojiTableData;
extern const std::string_view kContractionTableData;
}  // namespace hcms::detail

namespace hcms {

namespace {

std::vector<std::string> words(std::string_view text, char sep) {
  std::vector<std::string> out;
  for (auto w : split(text, sep)) {
    if (!w.empty()) out.emplace_back(w);
  }
  return out;
}

template <typename Fn>
void for_each_row(std::string_view data, Fn fn) {
  for (auto line : split(data, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    fn(split(line, '\t'));
  }
}

struct EmojiTables {
  std::map<char32_t, std::vector<std::string>> emoji;
  std::map<std::string, std::vector<std::string>, std::less<>> emoticons;
};

const EmojiTables& emoji_tables() {
  static const EmojiTables tables = [] {
    EmojiTables t;
    for_each_row(detail::kEmojiTableData, [&](const std::vector<std::string_view>& f) {
      if (f.size() != 3) return;
      if (f[0] == "emoji" && f[1].starts_with("U+")) {
        const auto cp = static_cast<char32_t>(std::stoul(std::string(f[1].substr(2)), nullptr, 16));
        t.emoji.emplace(cp, words(f[2], '_'));
      } else if (f[0] == "emoticon") {
        t.emoticons.emplace(ascii_lower(f[1]), words(f[2], '_'));
      }
    });
    return t;
  }();
  return tables;
}

bool is_emoji_modifier(char32_t cp) {
  return cp == 0xFE0F || cp == 0xFE0E || cp == 0x200D || (cp >= 0x1F3FB && cp <= 0x1F3FF);
}

// Splits a token around known emoji, replacing each with its name words.
void replace_emoji(const std::string& token, std::vector<std::string>& out) {
  const auto& tables = emoji_tables();
  if (auto it = tables.emoticons.find(ascii_lower(token)); it != tables.emoticons.end()) {
    out.insert(out.end(), it->second.begin(), it->second.end());
    return;
  }
  std::string pending;
  bool after_emoji = false;
  for (const auto& unit : decode_utf8(token)) {
    if (after_emoji && is_emoji_modifier(unit.value)) continue;
    if (auto it = tables.emoji.find(unit.value); it != tables.emoji.end()) {
      if (!pending.empty()) out.push_back(std::move(pending));
      pending.clear();
      out.insert(out.end(), it->second.begin(), it->second.end());
      after_emoji = true;
    } else {
      pending.append(token, unit.offset, unit.length);
      after_emoji = false;
    }
  }
  if (!pending.empty()) out.push_back(std::move(pending));
}

std::string contraction_key(std::string_view token) {
  std::string key = ascii_lower(token);
  // Typographic apostrophe U+2019.
  for (std::size_t pos; (pos = key.find("\xE2\x80\x99")) != std::string::npos;) key.replace(pos, 3, "'");
  return key;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && ascii_lower(s.substr(0, prefix.size())) == prefix;
}

// One application of every enabled step to one token.
void clean_token(std::string token, const CleaningConfig& cfg, std::vector<std::string>& out) {
  if (cfg.lowercase) token = ascii_lower(token);
  if (cfg.strip_links && is_link(token)) return;
  if (cfg.strip_usernames && token.starts_with('@')) return;
  if (cfg.strip_hashtags && token.starts_with('#')) {
    if (cfg.remove_hashtag_words) return;
    token.erase(0, token.find_first_not_of('#'));
    if (token.empty()) return;
  }

  std::vector<std::string> pieces;
  if (cfg.replace_emoji) {
    replace_emoji(token, pieces);
  } else {
    pieces.push_back(std::move(token));
  }

  for (auto& piece : pieces) {
    if (cfg.expand_contractions) {
      const auto& table = contraction_table();
      if (auto it = table.find(contraction_key(piece)); it != table.end()) {
        for (const auto& w : it->second) out.push_back(cfg.collapse_repeats ? collapse_repeats(w) : w);
        continue;
      }
    }
    if (cfg.collapse_repeats) piece = collapse_repeats(piece);
    if (!piece.empty()) out.push_back(std::move(piece));
  }
}

constexpr int kMaxPasses = 16;

}  // namespace

CleaningConfig CleaningConfig::none() {
  CleaningConfig c;
  c.lowercase = c.strip_links = c.strip_usernames = c.strip_hashtags = false;
  c.replace_emoji = c.expand_contractions = c.collapse_repeats = false;
  return c;
}

const std::map<std::string, std::vector<std::string>, std::less<>>& contraction_table() {
  static const auto table = [] {
    std::map<std::string, std::vector<std::string>, std::less<>> t;
    for_each_row(detail::kContractionTableData, [&](const std::vector<std::string_view>& f) {
      if (f.size() == 2) t.emplace(ascii_lower(f[0]), words(f[1], ' '));
    });
    return t;
  }();
  return table;
}

const std::map<char32_t, std::vector<std::string>>& emoji_table() { return emoji_tables().emoji; }

const std::map<std::string, std::vector<std::string>, std::less<>>& emoticon_table() {
  return emoji_tables().emoticons;
}

std::string collapse_repeats(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  char32_t last = 0;
  int run = 0;
  for (const auto& unit : decode_utf8(token)) {
    run = (run > 0 && unit.value == last) ? run + 1 : 1;
    last = unit.value;
    if (run <= 2) out.append(token.substr(unit.offset, unit.length));
  }
  return out;
}

bool is_link(std::string_view token) {
  return starts_with_ci(token, "http://") || starts_with_ci(token, "https://") ||
         starts_with_ci(token, "www.");
}

TweetRecord clean(const TweetRecord& record, const CleaningConfig& config) {
  TweetRecord current = record;
  // Later steps can expose tokens an earlier step would have handled
  // ("#@user", "htttp://"), so passes repeat until nothing changes.
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    TweetRecord next;
    next.id = current.id;
    next.label = current.label;
    std::vector<std::string> produced;
    for (std::size_t i = 0; i < current.tokens.size(); ++i) {
      produced.clear();
      clean_token(current.tokens[i], config, produced);
      for (auto& tok : produced) {
        next.tokens.push_back(std::move(tok));
        next.lang_tags.push_back(current.lang_tags[i]);
      }
    }
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

CleanedCorpus clean_corpus(std::span<const TweetRecord> records, const CleaningConfig& config) {
  CleanedCorpus out;
  out.records.reserve(records.size());
  for (const auto& rec : records) {
    auto cleaned = clean(rec, config);
    if (cleaned.tokens.empty()) {
      out.dropped_ids.push_back(rec.id);
    } else {
      out.records.push_back(std::move(cleaned));
    }
  }
  return out;
}

}  // namespace hcms
