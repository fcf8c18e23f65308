// hcms: preprocess, train, evaluate and ablate the convolution + self-attention
// sentiment classifier.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "app/app.hpp"
#include "hcms/corpus.hpp"
#include "hcms/synthetic.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hcms::app;

struct CommonFlags {
  std::string config_file;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_file, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--set", flags.overrides, "Override one configuration key (key=value); repeatable");
  cmd->add_option("--seed", flags.seed, "Random seed (overrides the configuration)");
  cmd->add_option("--out-dir", flags.out_dir, "Directory for outputs")->capture_default_str();
}

RunConfig resolve(const CommonFlags& flags) {
  auto overrides = flags.overrides;
  if (flags.seed) overrides.push_back("seed=" + std::to_string(*flags.seed));
  std::optional<fs::path> file;
  if (!flags.config_file.empty()) file = flags.config_file;
  return load_run_config(file, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Convolution + self-attention sentiment classifier for code-mixed tweets"};
  cli.require_subcommand(1);

  CommonFlags flags;
  std::string input, train_path, val_path, test_path, checkpoint;

  auto* preprocess = cli.add_subcommand("preprocess", "Clean a CONLL corpus and report skipped records");
  add_common(preprocess, flags);
  preprocess->add_option("--input", input, "CONLL file")->required();

  auto* train = cli.add_subcommand("train", "Train a model and write a checkpoint plus epoch log");
  add_common(train, flags);
  train->add_option("--train", train_path, "Labeled CONLL training file")->required();
  train->add_option("--val", val_path, "Labeled CONLL validation file (selects the best epoch)");

  auto* eval = cli.add_subcommand("eval", "Score a checkpoint on a labeled CONLL file");
  add_common(eval, flags);
  eval->add_option("--checkpoint", checkpoint, "Checkpoint written by train")->required();
  eval->add_option("--data", input, "Labeled CONLL file")->required();

  auto* predict = cli.add_subcommand("predict", "Write id<TAB>label predictions for a CONLL file");
  add_common(predict, flags);
  predict->add_option("--checkpoint", checkpoint, "Checkpoint written by train")->required();
  predict->add_option("--data", input, "CONLL file (labels optional)")->required();

  auto* stats = cli.add_subcommand("stats", "Sentiment and language distribution of a corpus");
  add_common(stats, flags);
  stats->add_option("--data", input, "CONLL file")->required();

  auto* ablate = cli.add_subcommand("ablate", "Preprocessing and attention ablation grid");
  add_common(ablate, flags);
  ablate->add_option("--train", train_path, "Labeled CONLL training file")->required();
  ablate->add_option("--val", val_path, "Labeled CONLL validation file")->required();
  ablate->add_option("--test", test_path, "Labeled CONLL test file")->required();

  auto* synth = cli.add_subcommand("synth", "Write the synthetic long-range task as train/val/test CONLL files");
  add_common(synth, flags);
  std::size_t synth_records = 300;
  std::size_t synth_gap = 6;
  synth->add_option("--records", synth_records, "Records in the training split")->capture_default_str();
  synth->add_option("--min-gap", synth_gap, "Tokens between the two cues")->capture_default_str();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const RunConfig config = resolve(flags);
    const fs::path out_dir = flags.out_dir;

    if (*preprocess) {
      const auto r = cmd_preprocess(input, config, out_dir);
      std::cout << "records: " << r.records_in << " parsed, " << r.records_out << " written, " << r.malformed
                << " malformed, " << r.dropped_empty << " empty after cleaning\n";
    } else if (*train) {
      std::optional<fs::path> val;
      if (!val_path.empty()) val = val_path;
      const auto r = cmd_train(train_path, val, config, out_dir);
      const auto& last = r.result.epochs.back();
      std::cout << "trained " << r.result.epochs.size() << " epochs; best epoch " << r.result.best_epoch
                << " (selection F1 " << r.result.best_score << "); final train accuracy " << last.train_accuracy
                << "\ncheckpoint: " << r.checkpoint.string() << "\n";
    } else if (*eval) {
      const auto report = cmd_eval(checkpoint, input, out_dir);
      std::cout << hcms::format_report(report, "HCMS");
    } else if (*predict) {
      const auto n = cmd_predict(checkpoint, input, out_dir);
      std::cout << n << " predictions written to " << (out_dir / "predictions.tsv").string() << "\n";
    } else if (*stats) {
      cmd_stats(input, out_dir);
      std::cout << hcms::read_conll_file(input).records.size() << " records; report in "
                << (out_dir / "stats.txt").string() << "\n";
    } else if (*ablate) {
      const auto rows = cmd_ablate(train_path, val_path, test_path, config, out_dir);
      for (const auto& row : rows) {
        std::cout << row.group << "\t" << row.name << "\tF1 " << row.test.headline_scores().f1 << "\n";
      }
    } else if (*synth) {
      fs::create_directories(out_dir);
      const std::uint64_t seed = config.train.seed;
      const struct {
        const char* name;
        std::size_t records;
        std::uint64_t stream;
      } splits[] = {{"train", synth_records, 0}, {"val", synth_records / 2, 1}, {"test", synth_records, 2}};
      for (const auto& s : splits) {
        hcms::LongRangeTaskConfig task;
        task.records = s.records;
        task.min_gap = synth_gap;
        task.seed = seed * 3 + s.stream;
        task.id_prefix = std::string(s.name) + "-";
        hcms::write_conll_file(out_dir / (std::string(s.name) + ".conll"), hcms::make_long_range_corpus(task));
      }
      std::cout << "wrote train/val/test to " << out_dir.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for_current_exception();
  }
  return kExitOk;
}
