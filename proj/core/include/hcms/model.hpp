#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hcms/encoded.hpp"
#include "hcms/layers.hpp"
#include "hcms/tensor.hpp"

namespace hcms {

struct ModelConfig {
  std::size_t vocab_size = 2;
  std::size_t embed_dim = 200;
  // Every input is right-padded with PAD (or truncated) to this many tokens,
  // which fixes the width of the dense head.
  std::size_t seq_len = 32;
  bool lang_features = false;
  ConvBlockConfig conv;
  bool attention = true;
  AttentionConfig attn;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

inline bool operator==(const ConvBlockConfig& a, const ConvBlockConfig& b) {
  return a.filters == b.filters && a.kernel == b.kernel && a.stride == b.stride &&
         a.pool == b.pool && a.pool_stride == b.pool_stride && a.global_pool == b.global_pool;
}
inline bool operator==(const AttentionConfig& a, const AttentionConfig& b) {
  return a.hidden == b.hidden && a.include_self == b.include_self &&
         a.sigmoid_scores == b.sigmoid_scores;
}

// Shortest input for which the layer stack is defined (convolution, pooling
// and, with attention enabled, a non-empty key set).
std::size_t min_sequence_length(const ModelConfig& config);

// Embedding -> ConvBlock -> (SelfAttention) -> concatenation -> DenseHead.
// With attention disabled the context vectors are concatenated directly.
class Model {
 public:
  struct Trace {
    EncodedTweet input;
    Tensor features;  // [u x (d [+ 4])]
    ConvBlock::Trace conv;
    std::optional<SelfAttentionLayer::Trace> attention;
    Tensor global;  // G
    DenseHead::Trace head;

    const Tensor& probs() const { return head.probs; }
  };

  Model(const ModelConfig& config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  std::size_t input_dim() const;
  std::size_t head_width() const { return head_.input_width(); }

  // Right-pads with PAD or truncates to the configured sequence length.
  EncodedTweet fit_length(const EncodedTweet& tweet) const;

  Trace forward(const EncodedTweet& tweet) const;
  // Accumulates every parameter gradient given dLoss/dlogits.
  void backward(const Trace& trace, const Tensor& d_logits);

  // Class probabilities for a tweet of any length.
  Tensor predict(const EncodedTweet& tweet) const;

  std::vector<ParameterRef> parameters();
  std::vector<const Parameter*> parameters() const;
  void zero_grad();

  EmbeddingLayer& embedding() { return embedding_; }
  ConvBlock& conv() { return conv_; }
  SelfAttentionLayer* attention() { return attention_ ? &*attention_ : nullptr; }
  DenseHead& head() { return head_; }

 private:
  Model(const ModelConfig& config, Rng&& rng);

  ModelConfig config_;
  EmbeddingLayer embedding_;
  ConvBlock conv_;
  std::optional<SelfAttentionLayer> attention_;
  DenseHead head_;
};

std::size_t argmax(const Tensor& probs);

}  // namespace hcms
