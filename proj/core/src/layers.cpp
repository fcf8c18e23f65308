#include "hcms/layers.hpp"

#include <cmath>
#include <string>

#include "hcms/errors.hpp"
#include "hcms/ops.hpp"

namespace hcms {

void glorot_uniform(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (auto& x : t.values()) x = rng.uniform(-limit, limit);
}

// ---------------------------------------------------------------- embedding

EmbeddingLayer::EmbeddingLayer(std::size_t vocab_size, std::size_t dim, Rng& rng)
    : table(Tensor({vocab_size, dim})) {
  for (std::size_t r = 1; r < vocab_size; ++r) {
    for (auto& x : table.value.row(r)) x = rng.uniform(-0.05, 0.05);
  }
}

Tensor EmbeddingLayer::forward(std::span<const TokenId> ids) const {
  if (ids.empty()) throw DimensionError("embedding: empty id sequence");
  Tensor out({ids.size(), dim()});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= vocab_size()) {
      throw VocabularyError("token id " + std::to_string(ids[i]) + " outside vocabulary of size " +
                            std::to_string(vocab_size()));
    }
    const auto src = table.value.row(ids[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

void EmbeddingLayer::backward(std::span<const TokenId> ids, const Tensor& d_out) {
  if (d_out.rank() != 2 || d_out.rows() != ids.size() || d_out.cols() != dim()) {
    throw DimensionError("embedding backward: gradient " + to_string(d_out.shape()) +
                         " does not match " + std::to_string(ids.size()) + " ids of width " +
                         std::to_string(dim()));
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == kPadId) continue;
    auto dst = table.grad.row(ids[i]);
    const auto src = d_out.row(i);
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
  }
}

// ---------------------------------------------------------------- conv block

ConvBlock::ConvBlock(std::size_t input_dim, const ConvBlockConfig& config, Rng& rng)
    : filters(Tensor({config.filters, config.kernel, input_dim})),
      bias(Tensor({config.filters})),
      config_(config) {
  if (config.filters == 0 || config.kernel == 0 || config.stride == 0 || config.pool == 0 ||
      config.pool_stride == 0) {
    throw ConfigError("convolution filters, kernel, stride, pool and pool stride must be positive");
  }
  glorot_uniform(filters.value, config.kernel * input_dim, config.kernel * config.filters, rng);
}

std::size_t ConvBlock::output_length(std::size_t length) const {
  if (length < config_.kernel) return 0;
  const std::size_t conv_len = (length - config_.kernel) / config_.stride + 1;
  if (config_.global_pool) return 1;
  if (conv_len < config_.pool) return 0;
  return (conv_len - config_.pool) / config_.pool_stride + 1;
}

ConvBlock::Trace ConvBlock::forward(const Tensor& input) const {
  Trace tr;
  tr.input = input;
  tr.pre_activation = ops::conv1d(input, filters.value, bias.value, config_.stride);
  tr.activated = ops::relu(tr.pre_activation);
  const std::size_t pool = config_.global_pool ? tr.activated.rows() : config_.pool;
  const std::size_t pool_stride = config_.global_pool ? 1 : config_.pool_stride;
  auto pooled = ops::maxpool1d(tr.activated, pool, pool_stride);
  tr.output = std::move(pooled.output);
  tr.argmax = std::move(pooled.argmax);
  return tr;
}

Tensor ConvBlock::backward(const Trace& trace, const Tensor& d_out) {
  const Tensor d_activated = ops::maxpool1d_backward(trace.activated.shape(), trace.argmax, d_out);
  const Tensor d_pre = ops::relu_backward(trace.pre_activation, d_activated);
  auto g = ops::conv1d_backward(trace.input, filters.value, config_.stride, d_pre);
  for (std::size_t i = 0; i < g.filters.size(); ++i) filters.grad[i] += g.filters[i];
  for (std::size_t i = 0; i < g.bias.size(); ++i) bias.grad[i] += g.bias[i];
  return std::move(g.input);
}

// ---------------------------------------------------------------- attention

SelfAttentionLayer::SelfAttentionLayer(std::size_t input_dim, const AttentionConfig& config,
                                       Rng& rng)
    : query_weight(Tensor({input_dim, config.hidden})),
      key_weight(Tensor({input_dim, config.hidden})),
      hidden_bias(Tensor({config.hidden})),
      score_weight(Tensor({config.hidden, 1})),
      score_bias(Tensor({1})),
      config_(config) {
  if (config.hidden == 0) throw ConfigError("attention hidden width must be positive");
  glorot_uniform(query_weight.value, input_dim, config.hidden, rng);
  glorot_uniform(key_weight.value, input_dim, config.hidden, rng);
  glorot_uniform(score_weight.value, config.hidden, 1, rng);
}

std::vector<std::size_t> SelfAttentionLayer::keys(std::size_t position, std::size_t length) const {
  std::vector<std::size_t> out;
  out.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    if (k != position || config_.include_self) out.push_back(k);
  }
  return out;
}

SelfAttentionLayer::Trace SelfAttentionLayer::forward(const Tensor& context) const {
  if (context.rank() != 2 || context.cols() != query_weight.value.rows()) {
    throw DimensionError("self-attention: context " + to_string(context.shape()) +
                         " does not match projection " + to_string(query_weight.shape()));
  }
  const std::size_t v = context.rows();
  if (v < min_positions()) {
    throw AttentionDomainError("self-attention over " + std::to_string(v) +
                               " context vector(s) leaves an empty key set");
  }
  const std::size_t width = context.cols();
  const std::size_t hidden = config_.hidden;

  Trace tr;
  tr.context = context;
  tr.query_part = ops::matmul(context, query_weight.value);
  tr.key_part = ops::matmul(context, key_weight.value);
  tr.output = Tensor({v, width});
  tr.hidden.reserve(v);
  tr.scores.reserve(v);
  tr.weights.reserve(v);

  for (std::size_t t = 0; t < v; ++t) {
    const auto key_ids = keys(t, v);
    const std::size_t n = key_ids.size();
    Tensor h({n, hidden});
    Tensor e({n});
    const auto q_row = tr.query_part.row(t);
    for (std::size_t i = 0; i < n; ++i) {
      const auto k_row = tr.key_part.row(key_ids[i]);
      auto h_row = h.row(i);
      double s = score_bias.value[0];
      for (std::size_t j = 0; j < hidden; ++j) {
        h_row[j] = std::tanh(q_row[j] + k_row[j] + hidden_bias.value[j]);
        s += h_row[j] * score_weight.value[j];
      }
      e[i] = config_.sigmoid_scores ? ops::sigmoid(s) : s;
    }
    Tensor q = ops::softmax(e);
    auto a = tr.output.row(t);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = context.row(key_ids[i]);
      for (std::size_t j = 0; j < width; ++j) a[j] += q[i] * c[j];
    }
    tr.hidden.push_back(std::move(h));
    tr.scores.push_back(std::move(e));
    tr.weights.push_back(std::move(q));
  }
  return tr;
}

Tensor SelfAttentionLayer::backward(const Trace& trace, const Tensor& d_output) {
  const Tensor& context = trace.context;
  if (d_output.shape() != context.shape()) {
    throw DimensionError("self-attention backward: gradient " + to_string(d_output.shape()) +
                         " does not match context " + to_string(context.shape()));
  }
  const std::size_t v = context.rows();
  const std::size_t width = context.cols();
  const std::size_t hidden = config_.hidden;

  Tensor d_context = Tensor::zeros_like(context);
  Tensor d_query_part = Tensor::zeros_like(trace.query_part);
  Tensor d_key_part = Tensor::zeros_like(trace.key_part);

  for (std::size_t t = 0; t < v; ++t) {
    const auto key_ids = keys(t, v);
    const std::size_t n = key_ids.size();
    const Tensor& q = trace.weights[t];
    const Tensor& e = trace.scores[t];
    const Tensor& h = trace.hidden[t];
    const auto d_a = d_output.row(t);

    Tensor d_q({n});
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = context.row(key_ids[i]);
      auto d_c = d_context.row(key_ids[i]);
      double acc = 0.0;
      for (std::size_t j = 0; j < width; ++j) {
        acc += d_a[j] * c[j];
        d_c[j] += q[i] * d_a[j];
      }
      d_q[i] = acc;
    }
    const Tensor d_e = ops::softmax_backward(q, d_q);
    auto d_qp = d_query_part.row(t);
    for (std::size_t i = 0; i < n; ++i) {
      const double d_s = config_.sigmoid_scores ? d_e[i] * e[i] * (1.0 - e[i]) : d_e[i];
      score_bias.grad[0] += d_s;
      const auto h_row = h.row(i);
      auto d_kp = d_key_part.row(key_ids[i]);
      for (std::size_t j = 0; j < hidden; ++j) {
        score_weight.grad[j] += d_s * h_row[j];
        const double d_z = d_s * score_weight.value[j] * (1.0 - h_row[j] * h_row[j]);
        hidden_bias.grad[j] += d_z;
        d_qp[j] += d_z;
        d_kp[j] += d_z;
      }
    }
  }

  const auto g_query = ops::matmul_backward(context, query_weight.value, d_query_part);
  const auto g_key = ops::matmul_backward(context, key_weight.value, d_key_part);
  for (std::size_t i = 0; i < query_weight.grad.size(); ++i) {
    query_weight.grad[i] += g_query.b[i];
    key_weight.grad[i] += g_key.b[i];
  }
  for (std::size_t i = 0; i < d_context.size(); ++i) d_context[i] += g_query.a[i] + g_key.a[i];
  return d_context;
}

// ---------------------------------------------------------------- dense head

DenseHead::DenseHead(std::size_t input_width, Rng& rng)
    : weight(Tensor({input_width, kNumClasses})), bias(Tensor({kNumClasses})) {
  glorot_uniform(weight.value, input_width, kNumClasses, rng);
}

DenseHead::Trace DenseHead::forward(const Tensor& g) const {
  if (g.size() != input_width()) {
    throw DimensionError("dense head: input " + to_string(g.shape()) + " does not match weight " +
                         to_string(weight.shape()));
  }
  Trace tr;
  tr.input = g.reshaped({1, g.size()});
  tr.logits = ops::add(ops::matmul(tr.input, weight.value).reshaped({kNumClasses}), bias.value);
  tr.probs = ops::softmax(tr.logits);
  return tr;
}

Tensor DenseHead::backward(const Trace& trace, const Tensor& d_logits) {
  if (d_logits.size() != kNumClasses) {
    throw DimensionError("dense head backward: gradient " + to_string(d_logits.shape()));
  }
  const auto g = ops::matmul_backward(trace.input, weight.value, d_logits.reshaped({1, kNumClasses}));
  for (std::size_t i = 0; i < weight.grad.size(); ++i) weight.grad[i] += g.b[i];
  for (std::size_t i = 0; i < kNumClasses; ++i) bias.grad[i] += d_logits[i];
  return g.a.reshaped({trace.input.size()});
}

}  // namespace hcms
