#include "hcms/config.hpp"

#include <charconv>
#include <cmath>

#include "hcms/cleaning.hpp"
#include "hcms/errors.hpp"
#include "hcms/model.hpp"
#include "hcms/optimizer.hpp"
#include "hcms/trainer.hpp"
#include "text_util.hpp"

namespace hcms {

KeyValueDoc KeyValueDoc::parse(std::string_view text) {
  KeyValueDoc doc;
  std::size_t number = 0;
  for (auto raw : split(text, '\n')) {
    ++number;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected \"key = value\"");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
    doc.set(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return doc;
}

KeyValueDoc KeyValueDoc::read_file(const std::filesystem::path& path) { return parse(read_text_file(path)); }

void KeyValueDoc::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void KeyValueDoc::set(std::string key, double value) { set(std::move(key), format_double(value)); }

void KeyValueDoc::merge(const KeyValueDoc& other) {
  for (const auto& [k, v] : other.entries_) set(k, v);
}

const std::string* KeyValueDoc::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::optional<std::string> KeyValueDoc::get(std::string_view key) const {
  if (const auto* v = find(key)) return *v;
  return std::nullopt;
}

void KeyValueDoc::read(std::string_view key, bool& out) const {
  const auto* v = find(key);
  if (!v) return;
  const auto s = ascii_lower(*v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    out = true;
  } else if (s == "false" || s == "0" || s == "no" || s == "off") {
    out = false;
  } else {
    throw ConfigError("key " + std::string(key) + ": expected a boolean, got \"" + *v + "\"");
  }
}

std::optional<std::uint64_t> KeyValueDoc::read_unsigned(std::string_view key) const {
  const auto* v = find(key);
  if (!v) return std::nullopt;
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), value);
  if (ec != std::errc() || end != v->data() + v->size()) {
    throw ConfigError("key " + std::string(key) + ": expected a non-negative integer, got \"" + *v + "\"");
  }
  return value;
}

void KeyValueDoc::read(std::string_view key, double& out) const {
  const auto* v = find(key);
  if (!v) return;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), value);
  if (ec != std::errc() || end != v->data() + v->size() || !std::isfinite(value)) {
    throw ConfigError("key " + std::string(key) + ": expected a number, got \"" + *v + "\"");
  }
  out = value;
}

void KeyValueDoc::read(std::string_view key, std::string& out) const {
  if (const auto* v = find(key)) out = *v;
}

std::string KeyValueDoc::format() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

void KeyValueDoc::write_file(const std::filesystem::path& path) const { write_text_file(path, format()); }

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

void write_config(KeyValueDoc& doc, const ModelConfig& c) {
  doc.set("vocab_size", c.vocab_size);
  doc.set("embed_dim", c.embed_dim);
  doc.set("seq_len", c.seq_len);
  doc.set("lang_features", c.lang_features);
  doc.set("filters", c.conv.filters);
  doc.set("kernel", c.conv.kernel);
  doc.set("stride", c.conv.stride);
  doc.set("pool", c.conv.pool);
  doc.set("pool_stride", c.conv.pool_stride);
  doc.set("global_pool", c.conv.global_pool);
  doc.set("attention", c.attention);
  doc.set("attn_hidden", c.attn.hidden);
  doc.set("include_self", c.attn.include_self);
  doc.set("attn_sigmoid", c.attn.sigmoid_scores);
}

void read_config(const KeyValueDoc& doc, ModelConfig& c) {
  doc.read("vocab_size", c.vocab_size);
  doc.read("embed_dim", c.embed_dim);
  doc.read("seq_len", c.seq_len);
  doc.read("lang_features", c.lang_features);
  doc.read("filters", c.conv.filters);
  doc.read("kernel", c.conv.kernel);
  doc.read("stride", c.conv.stride);
  doc.read("pool", c.conv.pool);
  doc.read("pool_stride", c.conv.pool_stride);
  doc.read("global_pool", c.conv.global_pool);
  doc.read("attention", c.attention);
  doc.read("attn_hidden", c.attn.hidden);
  doc.read("include_self", c.attn.include_self);
  doc.read("attn_sigmoid", c.attn.sigmoid_scores);
}

void write_config(KeyValueDoc& doc, const CleaningConfig& c) {
  doc.set("lowercase", c.lowercase);
  doc.set("strip_links", c.strip_links);
  doc.set("strip_usernames", c.strip_usernames);
  doc.set("strip_hashtags", c.strip_hashtags);
  doc.set("remove_hashtag_words", c.remove_hashtag_words);
  doc.set("replace_emoji", c.replace_emoji);
  doc.set("expand_contractions", c.expand_contractions);
  doc.set("collapse_repeats", c.collapse_repeats);
  doc.set("append_lang_onehot", c.append_lang_onehot);
}

void read_config(const KeyValueDoc& doc, CleaningConfig& c) {
  doc.read("lowercase", c.lowercase);
  doc.read("strip_links", c.strip_links);
  doc.read("strip_usernames", c.strip_usernames);
  doc.read("strip_hashtags", c.strip_hashtags);
  doc.read("remove_hashtag_words", c.remove_hashtag_words);
  doc.read("replace_emoji", c.replace_emoji);
  doc.read("expand_contractions", c.expand_contractions);
  doc.read("collapse_repeats", c.collapse_repeats);
  doc.read("append_lang_onehot", c.append_lang_onehot);
}

void write_config(KeyValueDoc& doc, const OptimizerConfig& c) {
  doc.set("lr", c.lr);
  doc.set("beta1", c.beta1);
  doc.set("beta2", c.beta2);
  doc.set("epsilon", c.epsilon);
}

void read_config(const KeyValueDoc& doc, OptimizerConfig& c) {
  doc.read("lr", c.lr);
  doc.read("beta1", c.beta1);
  doc.read("beta2", c.beta2);
  doc.read("epsilon", c.epsilon);
}

void write_config(KeyValueDoc& doc, const TrainConfig& c) {
  doc.set("epochs", c.epochs);
  doc.set("batch_size", c.batch_size);
  doc.set("seed", c.seed);
  doc.set("shuffle", c.shuffle);
  doc.set("stop_at_train_accuracy", c.stop_at_train_accuracy);
}

void read_config(const KeyValueDoc& doc, TrainConfig& c) {
  doc.read("epochs", c.epochs);
  doc.read("batch_size", c.batch_size);
  doc.read("seed", c.seed);
  doc.read("shuffle", c.shuffle);
  doc.read("stop_at_train_accuracy", c.stop_at_train_accuracy);
}

}  // namespace hcms
