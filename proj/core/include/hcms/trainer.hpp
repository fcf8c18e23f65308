#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcms/encoded.hpp"
#include "hcms/metrics.hpp"
#include "hcms/model.hpp"
#include "hcms/optimizer.hpp"

namespace hcms {

struct LabeledTweet {
  EncodedTweet tweet;
  std::size_t label;
};

struct TrainConfig {
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  std::uint64_t seed = 13;
  bool shuffle = true;
  // Stop once an epoch ends with this training accuracy (0 disables).
  double stop_at_train_accuracy = 0.0;

  void validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;      // mean per-example loss seen while training
  double train_accuracy = 0.0;  // accuracy of the end-of-epoch parameters
  std::optional<double> val_accuracy;
  std::optional<double> val_f1;  // weighted F1
  std::optional<double> val_macro_f1;
};

struct TrainResult {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  // Selection score of the kept parameters: validation F1, or training F1
  // when no validation set is given.
  double best_score = 0.0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Mini-batch training with Adam. Each batch is right-padded/truncated to the
// model's sequence length; gradients are averaged over the batch. On return
// the model holds the parameters of the epoch with the best selection
// score. Throws DataError on an empty training set.
TrainResult train(Model& model, std::span<const LabeledTweet> train_set, std::span<const LabeledTweet> val_set,
                  const TrainConfig& config, const OptimizerConfig& optimizer, const EpochCallback& on_epoch = {});

// One forward/backward/update on a batch; returns the mean batch loss.
double train_step(Model& model, std::span<const LabeledTweet* const> batch, const OptimizerConfig& optimizer);

double mean_loss(const Model& model, std::span<const LabeledTweet> examples);
std::vector<std::size_t> predict_labels(const Model& model, std::span<const LabeledTweet> examples);
MetricsReport evaluate(const Model& model, std::span<const LabeledTweet> examples);

// Tab-separated, fixed precision; identical inputs give identical bytes.
std::string format_epoch_log(std::span<const EpochRecord> epochs);

}  // namespace hcms
