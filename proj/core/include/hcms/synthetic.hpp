#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hcms/corpus.hpp"

namespace hcms {

// Code-mixed sequences whose label depends on two cues far apart: a
// sentiment word and a negation word. A negation flips the cue's polarity;
// records without a sentiment cue are neutral (and carry a negation word
// half the time, so negation alone is uninformative).
struct LongRangeTaskConfig {
  std::size_t records = 300;
  std::size_t min_length = 14;
  std::size_t max_length = 20;
  // Minimum number of tokens strictly between the two cues.
  std::size_t min_gap = 6;
  double negation_rate = 0.5;
  std::uint64_t seed = 1;
  std::string id_prefix = "lr";
};

std::vector<TweetRecord> make_long_range_corpus(const LongRangeTaskConfig& config);

}  // namespace hcms
