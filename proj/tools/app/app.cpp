#include "app.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include "hcms/checkpoint.hpp"
#include "hcms/corpus.hpp"
#include "hcms/errors.hpp"
#include "hcms/stats.hpp"
#include "hcms/vocabulary.hpp"

namespace hcms::app {

int exit_code_for_current_exception() noexcept {
  try {
    throw;
  } catch (const IoError&) {
    return kExitIo;
  } catch (const ParseError&) {
    return kExitParse;
  } catch (const CheckpointError&) {
    return kExitCheckpoint;
  } catch (const ConfigError&) {
    return kExitConfig;
  } catch (const DataError&) {
    return kExitData;
  } catch (const LabelError&) {
    return kExitData;
  } catch (const EvaluationError&) {
    return kExitData;
  } catch (const VocabularyError&) {
    return kExitData;
  } catch (...) {
    return kExitFailure;
  }
}

// ------------------------------------------------------------------ config

ModelConfig RunConfig::default_model_config() {
  ModelConfig m;
  m.seq_len = 0;  // resolved from the training data
  return m;
}

KeyValueDoc RunConfig::to_doc() const {
  KeyValueDoc doc;
  write_config(doc, cleaning);
  doc.set("min_count", min_count);
  doc.set("strict", strict);
  write_config(doc, model);
  write_config(doc, train);
  write_config(doc, optimizer);
  return doc;
}

void RunConfig::apply(const KeyValueDoc& doc) {
  const auto known = to_doc();
  for (const auto& [key, value] : doc.entries()) {
    if (!known.contains(key)) throw ConfigError("unknown configuration key \"" + key + "\"");
  }
  read_config(doc, cleaning);
  doc.read("min_count", min_count);
  doc.read("strict", strict);
  read_config(doc, model);
  read_config(doc, train);
  read_config(doc, optimizer);
}

void RunConfig::validate() const {
  train.validate();
  optimizer.validate();
  if (min_count == 0) throw ConfigError("min_count must be at least 1");
  auto probe = model;
  probe.lang_features = cleaning.append_lang_onehot;
  const auto min_len = min_sequence_length(probe);
  if (probe.seq_len != 0 && probe.seq_len < min_len) {
    throw ConfigError("seq_len " + std::to_string(probe.seq_len) + " is below the minimum of " +
                      std::to_string(min_len) + " for this layer configuration");
  }
  if (model.embed_dim == 0 || model.conv.filters == 0 || model.attn.hidden == 0) {
    throw ConfigError("embed_dim, filters and attn_hidden must be positive");
  }
}

RunConfig load_run_config(const std::optional<fs::path>& config_file, const std::vector<std::string>& overrides) {
  RunConfig config;
  if (config_file) {
    if (!fs::exists(*config_file)) throw IoError("configuration file " + config_file->string() + " not found");
    config.apply(KeyValueDoc::read_file(*config_file));
  }
  KeyValueDoc extra;
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override \"" + o + "\" is not key=value");
    auto parsed = KeyValueDoc::parse(o);
    extra.merge(parsed);
  }
  config.apply(extra);
  config.validate();
  return config;
}

// ------------------------------------------------------------------ helpers

namespace {

void prepare_out_dir(const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw IoError("write failure on " + path.string());
}

ConllCorpus read_corpus(const fs::path& path, bool strict) {
  if (!fs::exists(path)) throw IoError("input file " + path.string() + " not found");
  return read_conll_file(path, ConllOptions{strict});
}

// Cleaned, labeled records of a file; records emptied by cleaning are dropped.
std::vector<TweetRecord> load_training_records(const fs::path& path, const RunConfig& config) {
  auto corpus = read_corpus(path, config.strict);
  auto cleaned = clean_corpus(corpus.records, config.cleaning);
  std::vector<TweetRecord> out;
  for (auto& rec : cleaned.records) {
    if (rec.label) out.push_back(std::move(rec));
  }
  return out;
}

std::vector<LabeledTweet> encode_labeled(std::span<const TweetRecord> records, const Vocabulary& vocab,
                                         const CleaningConfig& cleaning) {
  std::vector<LabeledTweet> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    if (!rec.label) continue;
    out.push_back({encode(rec, vocab, cleaning), static_cast<std::size_t>(*rec.label)});
  }
  return out;
}

struct Fitted {
  Model model;
  Vocabulary vocab;
  RunConfig resolved;
  TrainResult result;
};

Fitted fit(std::span<const TweetRecord> train_records, std::span<const TweetRecord> val_records,
           const RunConfig& config) {
  if (train_records.empty()) throw DataError("training data holds no usable labeled records");
  auto vocab = build_vocab(train_records, config.min_count);
  RunConfig resolved = config;
  resolved.model.vocab_size = vocab.size();
  resolved.model.lang_features = config.cleaning.append_lang_onehot;
  if (resolved.model.seq_len == 0) {
    std::size_t longest = 0;
    for (const auto& r : train_records) longest = std::max(longest, r.tokens.size());
    resolved.model.seq_len = std::max(longest, min_sequence_length(resolved.model));
  }
  Model model(resolved.model, resolved.train.seed);
  const auto train_set = encode_labeled(train_records, vocab, resolved.cleaning);
  const auto val_set = encode_labeled(val_records, vocab, resolved.cleaning);
  auto result = train(model, train_set, val_set, resolved.train, resolved.optimizer);
  return Fitted{std::move(model), std::move(vocab), std::move(resolved), std::move(result)};
}

// Cleans without dropping so every input record keeps a row.
std::vector<EncodedTweet> encode_all(std::span<const TweetRecord> records, const Vocabulary& vocab,
                                     const CleaningConfig& cleaning) {
  std::vector<EncodedTweet> out;
  out.reserve(records.size());
  for (const auto& rec : records) out.push_back(encode(clean(rec, cleaning), vocab, cleaning));
  return out;
}

void write_resolved_config(const fs::path& out_dir, const KeyValueDoc& doc) {
  write_file(out_dir / "config.txt", doc.format());
}

}  // namespace

// ------------------------------------------------------------------ commands

PreprocessOutput cmd_preprocess(const fs::path& input, const RunConfig& config, const fs::path& out_dir) {
  auto corpus = read_corpus(input, config.strict);
  prepare_out_dir(out_dir);
  auto cleaned = clean_corpus(corpus.records, config.cleaning);

  PreprocessOutput out;
  out.records_in = corpus.records.size();
  out.records_out = cleaned.records.size();
  out.malformed = corpus.skipped.size();
  out.dropped_empty = cleaned.dropped_ids.size();

  write_conll_file(out_dir / "cleaned.conll", cleaned.records);
  std::string report;
  report += "input: " + input.string() + "\n";
  report += "records parsed: " + std::to_string(out.records_in) + "\n";
  report += "records written: " + std::to_string(out.records_out) + "\n";
  report += "malformed blocks skipped: " + std::to_string(out.malformed) + "\n";
  for (const auto& s : corpus.skipped) report += "  line " + std::to_string(s.line) + ": " + s.reason + "\n";
  report += "records empty after cleaning: " + std::to_string(out.dropped_empty) + "\n";
  for (const auto& id : cleaned.dropped_ids) report += "  id " + id + "\n";
  write_file(out_dir / "skip_report.txt", report);
  write_resolved_config(out_dir, config.to_doc());
  return out;
}

TrainOutput cmd_train(const fs::path& train_path, const std::optional<fs::path>& val_path, const RunConfig& config,
                      const fs::path& out_dir) {
  const auto train_records = load_training_records(train_path, config);
  std::vector<TweetRecord> val_records;
  if (val_path) val_records = load_training_records(*val_path, config);
  prepare_out_dir(out_dir);

  auto fitted = fit(train_records, val_records, config);
  TrainOutput out;
  out.checkpoint = out_dir / "model.hcms";
  out.epoch_log = out_dir / "epoch_log.tsv";
  save_checkpoint(out.checkpoint, fitted.model, fitted.vocab, fitted.resolved.cleaning);
  write_file(out.epoch_log, format_epoch_log(fitted.result.epochs));
  auto doc = fitted.resolved.to_doc();
  doc.set("best_epoch", fitted.result.best_epoch);
  write_resolved_config(out_dir, doc);
  out.result = std::move(fitted.result);
  out.resolved = std::move(fitted.resolved);
  return out;
}

MetricsReport cmd_eval(const fs::path& checkpoint, const fs::path& labeled, const fs::path& out_dir) {
  if (!fs::exists(checkpoint)) throw IoError("checkpoint " + checkpoint.string() + " not found");
  const auto loaded = load_checkpoint(checkpoint);
  const auto corpus = read_corpus(labeled, false);
  std::vector<TweetRecord> records;
  for (const auto& r : corpus.records) {
    if (r.label) records.push_back(r);
  }
  if (records.empty()) throw DataError(labeled.string() + " holds no labeled records");
  prepare_out_dir(out_dir);

  const auto encoded = encode_all(records, loaded.vocab, loaded.cleaning);
  std::vector<std::size_t> truth, predicted;
  for (std::size_t i = 0; i < records.size(); ++i) {
    truth.push_back(static_cast<std::size_t>(*records[i].label));
    predicted.push_back(argmax(loaded.model.predict(encoded[i])));
  }
  auto report = score(truth, predicted);
  write_file(out_dir / "metrics.txt", format_report(report, "HCMS"));
  write_file(out_dir / "metrics.kv", report_document(report).format());

  KeyValueDoc doc;
  doc.set("checkpoint", checkpoint.string());
  doc.set("data", labeled.string());
  write_config(doc, loaded.model.config());
  write_config(doc, loaded.cleaning);
  write_resolved_config(out_dir, doc);
  return report;
}

std::size_t cmd_predict(const fs::path& checkpoint, const fs::path& unlabeled, const fs::path& out_dir) {
  if (!fs::exists(checkpoint)) throw IoError("checkpoint " + checkpoint.string() + " not found");
  const auto loaded = load_checkpoint(checkpoint);
  const auto corpus = read_corpus(unlabeled, false);
  prepare_out_dir(out_dir);

  const auto encoded = encode_all(corpus.records, loaded.vocab, loaded.cleaning);
  std::string lines;
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const auto cls = static_cast<Sentiment>(argmax(loaded.model.predict(encoded[i])));
    lines += corpus.records[i].id + "\t" + std::string(to_string(cls)) + "\n";
  }
  write_file(out_dir / "predictions.tsv", lines);

  KeyValueDoc doc;
  doc.set("checkpoint", checkpoint.string());
  doc.set("data", unlabeled.string());
  write_config(doc, loaded.model.config());
  write_config(doc, loaded.cleaning);
  write_resolved_config(out_dir, doc);
  return corpus.records.size();
}

void cmd_stats(const fs::path& input, const fs::path& out_dir) {
  const auto corpus = read_corpus(input, false);
  prepare_out_dir(out_dir);
  const auto stats = corpus_stats(corpus.records);
  write_file(out_dir / "stats.txt", format_stats(stats));
  write_file(out_dir / "stats.kv", stats_document(stats).format());
  KeyValueDoc doc;
  doc.set("data", input.string());
  write_resolved_config(out_dir, doc);
}

std::vector<AblationRow> cmd_ablate(const fs::path& train_path, const fs::path& val_path, const fs::path& test_path,
                                    const RunConfig& config, const fs::path& out_dir) {
  const auto train_raw = read_corpus(train_path, config.strict).records;
  const auto val_raw = read_corpus(val_path, config.strict).records;
  const auto test_raw = read_corpus(test_path, config.strict).records;
  prepare_out_dir(out_dir);

  auto run = [&](bool emoji, bool contractions, bool attention) {
    RunConfig c = config;
    c.cleaning.replace_emoji = emoji;
    c.cleaning.expand_contractions = contractions;
    c.model.attention = attention;
    const auto train_records = clean_corpus(train_raw, c.cleaning).records;
    const auto val_records = clean_corpus(val_raw, c.cleaning).records;
    auto fitted = fit(train_records, val_records, c);
    std::vector<TweetRecord> test_records;
    for (const auto& r : test_raw) {
      if (r.label) test_records.push_back(r);
    }
    if (test_records.empty()) throw DataError(test_path.string() + " holds no labeled records");
    const auto encoded = encode_all(test_records, fitted.vocab, c.cleaning);
    std::vector<std::size_t> truth, predicted;
    for (std::size_t i = 0; i < test_records.size(); ++i) {
      truth.push_back(static_cast<std::size_t>(*test_records[i].label));
      predicted.push_back(argmax(fitted.model.predict(encoded[i])));
    }
    return score(truth, predicted);
  };

  std::vector<AblationRow> rows;
  const struct {
    const char* name;
    bool emoji, contractions;
  } preprocessing[] = {
      {"emoji+contraction replacement", true, true},
      {"only contraction replacement", false, true},
      {"only emoji replacement", true, false},
      {"no replacement", false, false},
  };
  for (const auto& p : preprocessing) {
    rows.push_back({"preprocessing", p.name, p.emoji, p.contractions, true, run(p.emoji, p.contractions, true)});
  }
  // Identical configuration to the first preprocessing row; training is
  // deterministic so its result is reused.
  rows.push_back({"attention", "HCMS", true, true, true, rows.front().test});
  rows.push_back({"attention", "HCMS w/o self-attention", true, true, false, run(true, true, false)});

  std::string tsv = "group\tconfiguration\temoji\tcontractions\tattention\tprecision\trecall\taccuracy\tf1\tmacro_f1\n";
  std::string table;
  char line[200];
  std::snprintf(line, sizeof line, "%-14s %-32s %10s %10s %10s %10s\n", "group", "configuration", "Precision",
                "Recall", "Acc.", "F1");
  table += line;
  for (const auto& r : rows) {
    const auto& h = r.test.headline_scores();
    tsv += r.group + "\t" + r.name + "\t" + (r.emoji ? "on" : "off") + "\t" + (r.contractions ? "on" : "off") +
           "\t" + (r.attention ? "on" : "off") + "\t" + format_double(h.precision) + "\t" +
           format_double(h.recall) + "\t" + format_double(r.test.accuracy) + "\t" + format_double(h.f1) + "\t" +
           format_double(r.test.macro.f1) + "\n";
    std::snprintf(line, sizeof line, "%-14s %-32s %10.2f %10.2f %10.2f %10.2f\n", r.group.c_str(), r.name.c_str(),
                  100.0 * h.precision, 100.0 * h.recall, 100.0 * r.test.accuracy, 100.0 * h.f1);
    table += line;
  }
  write_file(out_dir / "ablation.tsv", tsv);
  write_file(out_dir / "ablation.txt", table);
  write_resolved_config(out_dir, config.to_doc());
  return rows;
}

}  // namespace hcms::app
