#include "hcms/trainer.hpp"

#include <cstdio>
#include <numeric>

#include "hcms/errors.hpp"
#include "hcms/loss.hpp"
#include "hcms/ops.hpp"
#include "hcms/random.hpp"

namespace hcms {

namespace {

// Keeps the shuffle stream apart from the stream used for initialisation.
constexpr std::uint64_t kShuffleStream = 0x9E3779B97F4A7C15ULL;

std::vector<Tensor> snapshot(const Model& model) {
  std::vector<Tensor> out;
  for (const auto* p : model.parameters()) out.push_back(p->value);
  return out;
}

void restore(Model& model, const std::vector<Tensor>& values) {
  auto params = model.parameters();
  for (std::size_t i = 0; i < params.size(); ++i) params[i].param->value = values[i];
}

std::vector<std::size_t> labels_of(std::span<const LabeledTweet> examples) {
  std::vector<std::size_t> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) out.push_back(ex.label);
  return out;
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs == 0) throw ConfigError("epochs must be at least 1");
  if (batch_size == 0) throw ConfigError("batch size must be at least 1");
}

double train_step(Model& model, std::span<const LabeledTweet* const> batch, const OptimizerConfig& optimizer) {
  if (batch.empty()) return 0.0;
  const double inv = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const auto* ex : batch) {
    const auto trace = model.forward(model.fit_length(ex->tweet));
    loss += cross_entropy(ex->label, trace.probs());
    model.backward(trace, ops::scale(cross_entropy_logit_grad(ex->label, trace.probs()), inv));
  }
  for (auto& ref : model.parameters()) adam_step(*ref.param, optimizer);
  return loss * inv;
}

double mean_loss(const Model& model, std::span<const LabeledTweet> examples) {
  if (examples.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ex : examples) total += cross_entropy(ex.label, model.predict(ex.tweet));
  return total / static_cast<double>(examples.size());
}

std::vector<std::size_t> predict_labels(const Model& model, std::span<const LabeledTweet> examples) {
  std::vector<std::size_t> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) out.push_back(argmax(model.predict(ex.tweet)));
  return out;
}

MetricsReport evaluate(const Model& model, std::span<const LabeledTweet> examples) {
  return score(labels_of(examples), predict_labels(model, examples));
}

TrainResult train(Model& model, std::span<const LabeledTweet> train_set, std::span<const LabeledTweet> val_set,
                  const TrainConfig& config, const OptimizerConfig& optimizer, const EpochCallback& on_epoch) {
  if (train_set.empty()) throw DataError("training set is empty");
  config.validate();
  optimizer.validate(/*allow_zero_lr=*/true);
  for (const auto& ex : train_set) {
    if (ex.label >= kNumClasses) throw LabelError("training label " + std::to_string(ex.label) + " out of range");
  }

  Rng rng(config.seed ^ kShuffleStream);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<const LabeledTweet*> batch;

  TrainResult result;
  std::vector<Tensor> best;
  bool have_best = false;
  model.zero_grad();

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle) rng.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(&train_set[order[i]]);
      loss_sum += train_step(model, batch, optimizer) * static_cast<double>(batch.size());
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(train_set.size());
    const auto train_report = evaluate(model, train_set);
    rec.train_accuracy = train_report.accuracy;
    double selection = train_report.weighted.f1;
    if (!val_set.empty()) {
      const auto val_report = evaluate(model, val_set);
      rec.val_accuracy = val_report.accuracy;
      rec.val_f1 = val_report.weighted.f1;
      rec.val_macro_f1 = val_report.macro.f1;
      selection = val_report.weighted.f1;
    }
    if (!have_best || selection > result.best_score) {
      have_best = true;
      result.best_score = selection;
      result.best_epoch = epoch;
      best = snapshot(model);
    }
    result.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);
    if (config.stop_at_train_accuracy > 0.0 && rec.train_accuracy >= config.stop_at_train_accuracy) break;
  }

  restore(model, best);
  return result;
}

std::string format_epoch_log(std::span<const EpochRecord> epochs) {
  std::string out = "epoch\ttrain_loss\ttrain_accuracy\tval_accuracy\tval_f1\tval_macro_f1\n";
  char buf[64];
  auto field = [&](const std::optional<double>& v) {
    if (!v) return std::string("-");
    std::snprintf(buf, sizeof buf, "%.10f", *v);
    return std::string(buf);
  };
  for (const auto& e : epochs) {
    out += std::to_string(e.epoch);
    out += '\t' + field(e.train_loss);
    out += '\t' + field(e.train_accuracy);
    out += '\t' + field(e.val_accuracy);
    out += '\t' + field(e.val_f1);
    out += '\t' + field(e.val_macro_f1);
    out += '\n';
  }
  return out;
}

}  // namespace hcms
