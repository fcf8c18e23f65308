#pragma once

// Binary checkpoint container. Layout (all integers little-endian):
//
//   "HCMS"                      magic, 4 bytes
//   u32  version                kCheckpointVersion
//   u64  n, n bytes             configuration block ("key = value" text)
//   u64  n                      vocabulary size, then per token: u32 len, bytes
//   u32  n                      parameter count, then per parameter:
//          u32 len, bytes       name
//          u32 rank, rank x u64 extents
//          u64 offset           byte offset into the data section
//          u64 count            number of values
//   u64  n, n bytes             data section: IEEE-754 binary64 values
//   "SMCH"                      trailer, 4 bytes
//
// Full details live in docs/checkpoint_format.md.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "hcms/cleaning.hpp"
#include "hcms/model.hpp"
#include "hcms/vocabulary.hpp"

namespace hcms {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct LoadedModel {
  Model model;
  Vocabulary vocab;
  CleaningConfig cleaning;
};

std::string encode_checkpoint(const Model& model, const Vocabulary& vocab, const CleaningConfig& cleaning);
// Throws CheckpointError: kVersion for a foreign magic or unknown version,
// kCorrupt for truncated or inconsistent bytes, kShape when the stored
// tensors do not fit the stored configuration.
LoadedModel decode_checkpoint(std::string_view bytes);

void save_checkpoint(const std::filesystem::path& path, const Model& model, const Vocabulary& vocab,
                     const CleaningConfig& cleaning);
LoadedModel load_checkpoint(const std::filesystem::path& path);

}  // namespace hcms
