#include <benchmark/benchmark.h>

#include <vector>

#include "hcms/model.hpp"
#include "hcms/random.hpp"
#include "hcms/trainer.hpp"

namespace {

using namespace hcms;

// Args: embedding width, filters, kernel, attention hidden width, sequence
// length. One batch of 32 random tweets per iteration.
void BM_TrainStep(benchmark::State& state) {
  ModelConfig mc;
  mc.vocab_size = 500;
  mc.embed_dim = static_cast<std::size_t>(state.range(0));
  mc.conv.filters = static_cast<std::size_t>(state.range(1));
  mc.conv.kernel = static_cast<std::size_t>(state.range(2));
  mc.attn.hidden = static_cast<std::size_t>(state.range(3));
  mc.seq_len = static_cast<std::size_t>(state.range(4));
  Model model(mc, 5);
  Rng rng(6);
  std::vector<LabeledTweet> examples(32);
  for (auto& ex : examples) {
    ex.tweet.ids.resize(mc.seq_len);
    for (auto& id : ex.tweet.ids) id = static_cast<TokenId>(2 + rng.below(mc.vocab_size - 2));
    ex.label = rng.below(3);
  }
  std::vector<const LabeledTweet*> batch;
  for (const auto& ex : examples) batch.push_back(&ex);
  const OptimizerConfig opt;
  for (auto _ : state) benchmark::DoNotOptimize(train_step(model, batch, opt));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(batch.size()));
}
BENCHMARK(BM_TrainStep)->Args({32, 32, 4, 16, 32})->Args({200, 200, 8, 64, 64})->Unit(benchmark::kMillisecond);

}  // namespace
