#include <benchmark/benchmark.h>

#include "hcms/layers.hpp"
#include "hcms/ops.hpp"
#include "hcms/random.hpp"

namespace {

using namespace hcms;

Tensor random_tensor(Shape shape, Rng& rng) {
  Tensor t(std::move(shape));
  for (auto& x : t.values()) x = rng.uniform(-1.0, 1.0);
  return t;
}

// Args: sequence length, embedding width, filters, kernel.
void BM_Conv1dForward(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const auto f = static_cast<std::size_t>(state.range(2));
  const auto k = static_cast<std::size_t>(state.range(3));
  const Tensor x = random_tensor({n, d}, rng);
  const Tensor w = random_tensor({f, k, d}, rng);
  const Tensor b = random_tensor({f}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ops::conv1d(x, w, b, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<long>((n - k + 1) * f * k * d));
}
BENCHMARK(BM_Conv1dForward)->Args({32, 32, 32, 4})->Args({64, 200, 200, 8});

// Args: context vectors, context width, hidden width.
void BM_AttentionForward(benchmark::State& state) {
  Rng rng(2);
  const auto v = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  AttentionConfig cfg;
  cfg.hidden = static_cast<std::size_t>(state.range(2));
  SelfAttentionLayer layer(d, cfg, rng);
  const Tensor c = random_tensor({v, d}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(layer.forward(c));
}
BENCHMARK(BM_AttentionForward)->Args({14, 32, 16})->Args({28, 200, 64});

void BM_AttentionBackward(benchmark::State& state) {
  Rng rng(3);
  const auto v = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  AttentionConfig cfg;
  cfg.hidden = static_cast<std::size_t>(state.range(2));
  SelfAttentionLayer layer(d, cfg, rng);
  const Tensor c = random_tensor({v, d}, rng);
  const auto trace = layer.forward(c);
  const Tensor d_out = random_tensor({v, d}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(layer.backward(trace, d_out));
}
BENCHMARK(BM_AttentionBackward)->Args({14, 32, 16})->Args({28, 200, 64});

}  // namespace
