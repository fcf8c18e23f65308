#pragma once

// Flat "key = value" documents. Used for run configuration files, the
// configuration block inside checkpoints, and machine-readable reports.

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hcms {

struct ModelConfig;
struct CleaningConfig;
struct OptimizerConfig;
struct TrainConfig;

// Insertion-ordered key/value pairs; setting an existing key overwrites it
// in place.
class KeyValueDoc {
 public:
  // Blank lines and lines starting with '#' are ignored. Throws ConfigError
  // naming the line for anything that is not "key = value".
  static KeyValueDoc parse(std::string_view text);
  static KeyValueDoc read_file(const std::filesystem::path& path);

  void set(std::string key, std::string value);
  void set(std::string key, bool value) { set(std::move(key), std::string(value ? "true" : "false")); }
  template <std::unsigned_integral T>
  void set(std::string key, T value) {
    set(std::move(key), std::to_string(static_cast<std::uint64_t>(value)));
  }
  void set(std::string key, double value);
  void set(std::string key, const char* value) { set(std::move(key), std::string(value)); }
  void merge(const KeyValueDoc& other);

  bool contains(std::string_view key) const { return find(key) != nullptr; }
  std::optional<std::string> get(std::string_view key) const;

  // Typed readers that leave `out` untouched when the key is absent and throw
  // ConfigError on malformed values.
  void read(std::string_view key, bool& out) const;
  template <std::unsigned_integral T>
  void read(std::string_view key, T& out) const {
    if (auto v = read_unsigned(key)) out = static_cast<T>(*v);
  }
  void read(std::string_view key, double& out) const;
  void read(std::string_view key, std::string& out) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::string format() const;
  void write_file(const std::filesystem::path& path) const;

 private:
  std::optional<std::uint64_t> read_unsigned(std::string_view key) const;
  const std::string* find(std::string_view key) const;

  std::vector<std::pair<std::string, std::string>> entries_;
};

// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

void write_config(KeyValueDoc& doc, const ModelConfig& config);
void read_config(const KeyValueDoc& doc, ModelConfig& config);
void write_config(KeyValueDoc& doc, const CleaningConfig& config);
void read_config(const KeyValueDoc& doc, CleaningConfig& config);
void write_config(KeyValueDoc& doc, const OptimizerConfig& config);
void read_config(const KeyValueDoc& doc, OptimizerConfig& config);
void write_config(KeyValueDoc& doc, const TrainConfig& config);
void read_config(const KeyValueDoc& doc, TrainConfig& config);

}  // namespace hcms
