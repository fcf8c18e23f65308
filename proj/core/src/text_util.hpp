#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hcms {

std::string ascii_lower(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

// One decoded UTF-8 unit. Invalid bytes decode as themselves, one byte
// each, so re-encoding via the byte ranges is always lossless.
struct CodePoint {
  char32_t value;
  std::size_t offset;
  std::size_t length;
};
std::vector<CodePoint> decode_utf8(std::string_view s);

}  // namespace hcms
