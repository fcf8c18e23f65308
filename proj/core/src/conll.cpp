#include <fstream>
#include <sstream>

#include "hcms/corpus.hpp"
#include "hcms/errors.hpp"
#include "text_util.hpp"

namespace hcms {

std::string_view to_string(LangTag tag) {
  switch (tag) {
    case LangTag::kHin: return "Hin";
    case LangTag::kEng: return "Eng";
    case LangTag::kOther: return "O";
    case LangTag::kEmoticon: return "EMT";
  }
  return "O";
}

std::string_view to_string(Sentiment label) {
  switch (label) {
    case Sentiment::kPositive: return "positive";
    case Sentiment::kNegative: return "negative";
    case Sentiment::kNeutral: return "neutral";
  }
  return "neutral";
}

std::optional<LangTag> parse_lang_tag(std::string_view text) {
  const std::string t = ascii_lower(text);
  if (t == "hin") return LangTag::kHin;
  if (t == "eng") return LangTag::kEng;
  if (t == "o") return LangTag::kOther;
  if (t == "emt") return LangTag::kEmoticon;
  return std::nullopt;
}

std::optional<Sentiment> parse_sentiment(std::string_view text) {
  const std::string t = ascii_lower(text);
  if (t == "positive") return Sentiment::kPositive;
  if (t == "negative") return Sentiment::kNegative;
  if (t == "neutral") return Sentiment::kNeutral;
  return std::nullopt;
}

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

class BlockParser {
 public:
  BlockParser(const ConllOptions& options, ConllCorpus& out) : options_(options), out_(out) {}

  void parse(const std::vector<Line>& block) {
    if (block.empty()) return;
    TweetRecord rec;
    if (!parse_meta(block.front(), rec)) return;
    for (std::size_t i = 1; i < block.size(); ++i) {
      const auto fields = split(block[i].text, '\t');
      if (fields.size() != 2 || fields[0].empty()) {
        return reject(block[i].number, "expected \"<token>\\t<lang_tag>\"");
      }
      const auto tag = parse_lang_tag(fields[1]);
      if (!tag) return reject(block[i].number, "unknown language tag \"" + std::string(fields[1]) + "\"");
      rec.tokens.emplace_back(fields[0]);
      rec.lang_tags.push_back(*tag);
    }
    if (rec.tokens.empty()) return reject(block.front().number, "record has no tokens");
    out_.records.push_back(std::move(rec));
  }

 private:
  bool parse_meta(const Line& line, TweetRecord& rec) {
    auto fields = split(line.text, '\t');
    if (fields.empty() || ascii_lower(fields[0]) != "meta") {
      reject(line.number, "block does not start with a meta line");
      return false;
    }
    if (fields.size() < 2 || fields.size() > 3 || fields[1].empty()) {
      reject(line.number, "expected \"meta\\t<id>[\\t<label>]\"");
      return false;
    }
    if (fields.size() == 3) {
      auto label = parse_sentiment(fields[2]);
      // Some releases put the label before the id.
      if (!label && !options_.strict && parse_sentiment(fields[1])) {
        std::swap(fields[1], fields[2]);
        label = parse_sentiment(fields[2]);
      }
      if (!label) {
        reject(line.number, "unknown sentiment label \"" + std::string(fields[2]) + "\"");
        return false;
      }
      rec.label = label;
    }
    rec.id = std::string(fields[1]);
    return true;
  }

  void reject(std::size_t line, std::string reason) {
    if (options_.strict) throw ParseError(reason, line);
    out_.skipped.push_back({line, std::move(reason)});
  }

  const ConllOptions& options_;
  ConllCorpus& out_;
};

}  // namespace

ConllCorpus parse_conll(std::istream& in, const ConllOptions& options) {
  ConllCorpus out;
  BlockParser parser(options, out);
  std::vector<Line> block;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (number == 1 && text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
    if (is_blank(text)) {
      parser.parse(block);
      block.clear();
    } else {
      block.push_back({number, std::move(text)});
    }
  }
  if (in.bad()) throw IoError("read failure while parsing CONLL input");
  parser.parse(block);
  return out;
}

ConllCorpus parse_conll(std::string_view text, const ConllOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_conll(in, options);
}

ConllCorpus read_conll_file(const std::filesystem::path& path, const ConllOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_conll(in, options);
}

std::string serialize_conll(std::span<const TweetRecord> records) {
  std::string out;
  for (const auto& rec : records) {
    out += "meta\t";
    out += rec.id;
    if (rec.label) {
      out += '\t';
      out += to_string(*rec.label);
    }
    out += '\n';
    for (std::size_t i = 0; i < rec.tokens.size(); ++i) {
      out += rec.tokens[i];
      out += '\t';
      out += to_string(rec.lang_tags[i]);
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

void write_conll_file(const std::filesystem::path& path, std::span<const TweetRecord> records) {
  write_text_file(path, serialize_conll(records));
}

}  // namespace hcms
