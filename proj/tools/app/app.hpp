#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hcms/cleaning.hpp"
#include "hcms/config.hpp"
#include "hcms/metrics.hpp"
#include "hcms/model.hpp"
#include "hcms/optimizer.hpp"
#include "hcms/trainer.hpp"

namespace hcms::app {

namespace fs = std::filesystem;

// Process exit codes, one per error class.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitParse = 4,
  kExitCheckpoint = 5,
  kExitData = 6,
  kExitConfig = 7,
};

// Maps the active exception (called from a catch block) to an exit code.
int exit_code_for_current_exception() noexcept;

// Everything a run needs besides file paths. model.vocab_size and, when
// left at 0, model.seq_len are resolved from the training data.
struct RunConfig {
  CleaningConfig cleaning;
  ModelConfig model = default_model_config();
  TrainConfig train;
  OptimizerConfig optimizer;
  std::size_t min_count = 1;
  bool strict = false;

  static ModelConfig default_model_config();

  KeyValueDoc to_doc() const;
  // Throws ConfigError for unknown keys or malformed values.
  void apply(const KeyValueDoc& doc);
  void validate() const;
};

// Reads `config_file` (if any) then applies "key=value" overrides in order.
RunConfig load_run_config(const std::optional<fs::path>& config_file, const std::vector<std::string>& overrides);

struct PreprocessOutput {
  std::size_t records_in = 0;
  std::size_t records_out = 0;
  std::size_t malformed = 0;
  std::size_t dropped_empty = 0;
};
PreprocessOutput cmd_preprocess(const fs::path& input, const RunConfig& config, const fs::path& out_dir);

struct TrainOutput {
  TrainResult result;
  fs::path checkpoint;
  fs::path epoch_log;
  RunConfig resolved;
};
TrainOutput cmd_train(const fs::path& train_path, const std::optional<fs::path>& val_path, const RunConfig& config,
                      const fs::path& out_dir);

MetricsReport cmd_eval(const fs::path& checkpoint, const fs::path& labeled, const fs::path& out_dir);

// Writes predictions.tsv with one "id<TAB>label" line per input record.
std::size_t cmd_predict(const fs::path& checkpoint, const fs::path& unlabeled, const fs::path& out_dir);

void cmd_stats(const fs::path& input, const fs::path& out_dir);

struct AblationRow {
  std::string group;  // "preprocessing" or "attention"
  std::string name;
  bool emoji;
  bool contractions;
  bool attention;
  MetricsReport test;
};
// Four preprocessing rows ({emoji} x {contractions}, attention on) then the
// attention on/off pair with both replacements enabled.
std::vector<AblationRow> cmd_ablate(const fs::path& train_path, const fs::path& val_path, const fs::path& test_path,
                                    const RunConfig& config, const fs::path& out_dir);

}  // namespace hcms::app
