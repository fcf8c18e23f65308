#include "hcms/synthetic.hpp"

#include <array>
#include <utility>

#include "hcms/errors.hpp"
#include "hcms/random.hpp"

namespace hcms {

namespace {

using Word = std::pair<const char*, LangTag>;

constexpr std::array kFillers = {
    Word{"yaar", LangTag::kHin},  Word{"aaj", LangTag::kHin},     Word{"kal", LangTag::kHin},
    Word{"bhai", LangTag::kHin},  Word{"dekha", LangTag::kHin},   Word{"phir", LangTag::kHin},
    Word{"bhi", LangTag::kHin},   Word{"ek", LangTag::kHin},      Word{"baar", LangTag::kHin},
    Word{"sab", LangTag::kHin},   Word{"log", LangTag::kHin},     Word{"kya", LangTag::kHin},
    Word{"hai", LangTag::kHin},   Word{"tha", LangTag::kHin},     Word{"wala", LangTag::kHin},
    Word{"abhi", LangTag::kHin},  Word{"ghar", LangTag::kHin},    Word{"the", LangTag::kEng},
    Word{"movie", LangTag::kEng}, Word{"today", LangTag::kEng},   Word{"team", LangTag::kEng},
    Word{"game", LangTag::kEng},  Word{"match", LangTag::kEng},   Word{"show", LangTag::kEng},
    Word{"my", LangTag::kEng},    Word{"friend", LangTag::kEng},  Word{"this", LangTag::kEng},
    Word{"time", LangTag::kEng},  Word{"song", LangTag::kEng},    Word{"...", LangTag::kOther},
};
constexpr std::array kPositive = {Word{"badhiya", LangTag::kHin}, Word{"great", LangTag::kEng},
                                  Word{"mast", LangTag::kHin}, Word{"awesome", LangTag::kEng}};
constexpr std::array kNegative = {Word{"bekar", LangTag::kHin}, Word{"bad", LangTag::kEng},
                                  Word{"ghatiya", LangTag::kHin}, Word{"worst", LangTag::kEng}};
constexpr std::array kNegation = {Word{"nahi", LangTag::kHin}, Word{"not", LangTag::kEng},
                                  Word{"never", LangTag::kEng}};

template <std::size_t N>
const Word& pick(const std::array<Word, N>& words, Rng& rng) {
  return words[rng.below(N)];
}

}  // namespace

std::vector<TweetRecord> make_long_range_corpus(const LongRangeTaskConfig& config) {
  if (config.min_length > config.max_length || config.max_length < config.min_gap + 2) {
    throw ConfigError("long-range task: lengths cannot hold two cues " + std::to_string(config.min_gap) +
                      " tokens apart");
  }
  Rng rng(config.seed);
  std::vector<TweetRecord> out;
  out.reserve(config.records);
  for (std::size_t n = 0; n < config.records; ++n) {
    const std::size_t length =
        std::max(config.min_length, config.min_gap + 2) +
        rng.below(config.max_length - std::max(config.min_length, config.min_gap + 2) + 1);
    TweetRecord rec;
    rec.id = config.id_prefix + std::to_string(n + 1);
    for (std::size_t i = 0; i < length; ++i) {
      const auto& w = pick(kFillers, rng);
      rec.tokens.emplace_back(w.first);
      rec.lang_tags.push_back(w.second);
    }

    const auto kind = rng.below(3);  // 0 positive cue, 1 negative cue, 2 none
    const bool negated = rng.uniform(0.0, 1.0) < config.negation_rate;

    // Two positions with at least min_gap tokens between them, in either order.
    std::size_t cue_pos, neg_pos;
    do {
      cue_pos = rng.below(length);
      neg_pos = rng.below(length);
    } while ((cue_pos > neg_pos ? cue_pos - neg_pos : neg_pos - cue_pos) <= config.min_gap);

    if (kind < 2) {
      const auto& w = kind == 0 ? pick(kPositive, rng) : pick(kNegative, rng);
      rec.tokens[cue_pos] = w.first;
      rec.lang_tags[cue_pos] = w.second;
    }
    if (negated) {
      const auto& w = pick(kNegation, rng);
      rec.tokens[neg_pos] = w.first;
      rec.lang_tags[neg_pos] = w.second;
    }
    if (kind == 2) {
      rec.label = Sentiment::kNeutral;
    } else {
      const bool positive = (kind == 0) != negated;
      rec.label = positive ? Sentiment::kPositive : Sentiment::kNegative;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace hcms
