#pragma once

#include <cstdint>
#include <vector>

namespace hcms {

using TokenId = std::uint32_t;

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kUnkId = 1;

// Width of the optional per-token language one-hot (HIN, ENG, O, EMT).
inline constexpr std::size_t kLangFeatureWidth = 4;
// Language slot for tokens without a tag (padding); encodes as all zeros.
inline constexpr std::uint8_t kNoLang = 0xff;

// Model-ready form of one tweet. `lang` is either empty or holds one
// language index per id.
struct EncodedTweet {
  std::vector<TokenId> ids;
  std::vector<std::uint8_t> lang;

  friend bool operator==(const EncodedTweet&, const EncodedTweet&) = default;
};

}  // namespace hcms
