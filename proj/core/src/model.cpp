#include "hcms/model.hpp"

#include <algorithm>
#include <string>

#include "hcms/errors.hpp"

namespace hcms {

namespace {

std::size_t context_length(const ModelConfig& c, std::size_t length) {
  if (length < c.conv.kernel) return 0;
  const std::size_t conv_len = (length - c.conv.kernel) / c.conv.stride + 1;
  if (c.conv.global_pool) return 1;
  if (conv_len < c.conv.pool) return 0;
  return (conv_len - c.conv.pool) / c.conv.pool_stride + 1;
}

std::size_t min_contexts(const ModelConfig& c) {
  return c.attention && !c.attn.include_self ? 2 : 1;
}

std::size_t head_width_for(const ModelConfig& c) {
  if (c.seq_len < min_sequence_length(c)) {
    throw ConfigError("sequence length " + std::to_string(c.seq_len) +
                      " is below the minimum of " + std::to_string(min_sequence_length(c)) +
                      " for this layer configuration");
  }
  return context_length(c, c.seq_len) * c.conv.filters;
}

}  // namespace

std::size_t min_sequence_length(const ModelConfig& config) {
  if (config.conv.kernel == 0 || config.conv.stride == 0 || config.conv.pool == 0 ||
      config.conv.pool_stride == 0) {
    throw ConfigError("convolution kernel, stride, pool and pool stride must be positive");
  }
  if (config.conv.global_pool && min_contexts(config) > 1) {
    throw ConfigError("global pooling leaves one context vector; attention needs include_self");
  }
  std::size_t length = config.conv.kernel;
  while (context_length(config, length) < min_contexts(config)) ++length;
  return length;
}

Model::Model(const ModelConfig& config, std::uint64_t seed) : Model(config, Rng(seed)) {}

// Layers draw from one generator in pipeline order.
Model::Model(const ModelConfig& config, Rng&& rng)
    : config_(config),
      embedding_(config.vocab_size, config.embed_dim, rng),
      conv_(config.embed_dim + (config.lang_features ? kLangFeatureWidth : 0), config.conv, rng),
      attention_(config.attention ? std::optional<SelfAttentionLayer>(
                                        std::in_place, config.conv.filters, config.attn, rng)
                                  : std::nullopt),
      head_(head_width_for(config), rng) {
  if (config.vocab_size < 2) throw ConfigError("vocabulary must hold at least PAD and UNK");
  if (config.embed_dim == 0) throw ConfigError("embedding width must be positive");
}

std::size_t Model::input_dim() const {
  return config_.embed_dim + (config_.lang_features ? kLangFeatureWidth : 0);
}

EncodedTweet Model::fit_length(const EncodedTweet& tweet) const {
  EncodedTweet out = tweet;
  out.ids.resize(config_.seq_len, kPadId);
  if (config_.lang_features) {
    out.lang.resize(config_.seq_len, kNoLang);
  } else {
    out.lang.clear();
  }
  return out;
}

Model::Trace Model::forward(const EncodedTweet& tweet) const {
  Trace tr;
  tr.input = tweet;
  Tensor embedded = embedding_.forward(tweet.ids);
  if (config_.lang_features) {
    if (tweet.lang.size() != tweet.ids.size()) {
      throw DimensionError("language features: " + std::to_string(tweet.lang.size()) +
                           " tags for " + std::to_string(tweet.ids.size()) + " tokens");
    }
    const std::size_t d = config_.embed_dim;
    tr.features = Tensor({tweet.ids.size(), d + kLangFeatureWidth});
    for (std::size_t i = 0; i < tweet.ids.size(); ++i) {
      const auto src = embedded.row(i);
      auto dst = tr.features.row(i);
      std::copy(src.begin(), src.end(), dst.begin());
      if (tweet.lang[i] < kLangFeatureWidth) dst[d + tweet.lang[i]] = 1.0;
    }
  } else {
    tr.features = std::move(embedded);
  }

  tr.conv = conv_.forward(tr.features);
  const Tensor* context = &tr.conv.output;
  if (attention_) {
    tr.attention = attention_->forward(tr.conv.output);
    context = &tr.attention->output;
  }
  tr.global = context->reshaped({context->size()});
  tr.head = head_.forward(tr.global);
  return tr;
}

void Model::backward(const Trace& trace, const Tensor& d_logits) {
  const Tensor d_global = head_.backward(trace.head, d_logits);
  Tensor d_context = d_global.reshaped(trace.conv.output.shape());
  if (attention_) d_context = attention_->backward(*trace.attention, d_context);
  const Tensor d_features = conv_.backward(trace.conv, d_context);
  if (config_.lang_features) {
    const std::size_t d = config_.embed_dim;
    Tensor d_embedded({d_features.rows(), d});
    for (std::size_t i = 0; i < d_features.rows(); ++i) {
      const auto src = d_features.row(i);
      std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(d), d_embedded.row(i).begin());
    }
    embedding_.backward(trace.input.ids, d_embedded);
  } else {
    embedding_.backward(trace.input.ids, d_features);
  }
}

Tensor Model::predict(const EncodedTweet& tweet) const { return forward(fit_length(tweet)).head.probs; }

std::vector<ParameterRef> Model::parameters() {
  std::vector<ParameterRef> out{
      {"embedding.table", &embedding_.table},
      {"conv.filters", &conv_.filters},
      {"conv.bias", &conv_.bias},
  };
  if (attention_) {
    out.push_back({"attention.query_weight", &attention_->query_weight});
    out.push_back({"attention.key_weight", &attention_->key_weight});
    out.push_back({"attention.hidden_bias", &attention_->hidden_bias});
    out.push_back({"attention.score_weight", &attention_->score_weight});
    out.push_back({"attention.score_bias", &attention_->score_bias});
  }
  out.push_back({"head.weight", &head_.weight});
  out.push_back({"head.bias", &head_.bias});
  return out;
}

std::vector<const Parameter*> Model::parameters() const {
  std::vector<const Parameter*> out;
  for (const auto& ref : const_cast<Model*>(this)->parameters()) out.push_back(ref.param);
  return out;
}

void Model::zero_grad() {
  for (auto& ref : parameters()) ref.param->zero_grad();
}

std::size_t argmax(const Tensor& probs) {
  const auto v = probs.values();
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace hcms
