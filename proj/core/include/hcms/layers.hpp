#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcms/encoded.hpp"
#include "hcms/random.hpp"
#include "hcms/tensor.hpp"

namespace hcms {

// Glorot-uniform fill with limit sqrt(6 / (fan_in + fan_out)).
void glorot_uniform(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng);

// Named handle used to walk a layer's parameters in a fixed order.
struct ParameterRef {
  std::string name;
  Parameter* param;
};

// Token id -> row of a learned table. Row 0 (PAD) stays zero and never
// accumulates gradient.
class EmbeddingLayer {
 public:
  EmbeddingLayer(std::size_t vocab_size, std::size_t dim, Rng& rng);

  std::size_t vocab_size() const { return table.value.rows(); }
  std::size_t dim() const { return table.value.cols(); }

  Tensor forward(std::span<const TokenId> ids) const;
  void backward(std::span<const TokenId> ids, const Tensor& d_out);

  Parameter table;
};

struct ConvBlockConfig {
  std::size_t filters = 200;
  std::size_t kernel = 8;
  std::size_t stride = 1;
  std::size_t pool = 2;
  std::size_t pool_stride = 2;
  // Pool over the whole convolution output, leaving one context vector.
  bool global_pool = false;
};

// MaxPool(ReLU(Conv1D(X))).
class ConvBlock {
 public:
  struct Trace {
    Tensor input;
    Tensor pre_activation;
    Tensor activated;
    std::vector<std::size_t> argmax;
    Tensor output;
  };

  ConvBlock(std::size_t input_dim, const ConvBlockConfig& config, Rng& rng);

  const ConvBlockConfig& config() const { return config_; }
  // Number of context vectors produced for an input of `length` rows, or 0
  // when the input is too short.
  std::size_t output_length(std::size_t length) const;

  Trace forward(const Tensor& input) const;
  // Accumulates filter/bias gradients and returns the input gradient.
  Tensor backward(const Trace& trace, const Tensor& d_out);

  Parameter filters;
  Parameter bias;

 private:
  ConvBlockConfig config_;
};

struct AttentionConfig {
  std::size_t hidden = 64;
  bool include_self = false;
  // Squash alignment scores with a sigmoid before the softmax; when false
  // the raw projected scores are normalised directly.
  bool sigmoid_scores = true;
};

// Pairwise additive self-attention. For every position t and every key t'
// in its attended set:
//   h = tanh(c_t W_t + c_t' W_c + b_t),  e = sigmoid(h W_a + b_a),
//   q_t = softmax(e_t),  a_t = sum_t' q_t,t' c_t'.
class SelfAttentionLayer {
 public:
  struct Trace {
    Tensor context;                 // [v x d']
    Tensor query_part;              // C W_t
    Tensor key_part;                // C W_c
    std::vector<Tensor> hidden;     // per t: [keys x d_h]
    std::vector<Tensor> scores;     // per t: e_t
    std::vector<Tensor> weights;    // per t: q_t
    Tensor output;                  // [v x d'], row t = a_t
  };

  SelfAttentionLayer(std::size_t input_dim, const AttentionConfig& config, Rng& rng);

  const AttentionConfig& config() const { return config_; }
  std::size_t min_positions() const { return config_.include_self ? 1 : 2; }
  // Key positions attended from `position` in a sequence of `length`.
  std::vector<std::size_t> keys(std::size_t position, std::size_t length) const;

  Trace forward(const Tensor& context) const;
  Tensor backward(const Trace& trace, const Tensor& d_output);

  Parameter query_weight;  // W_t
  Parameter key_weight;    // W_c
  Parameter hidden_bias;   // b_t
  Parameter score_weight;  // W_a
  Parameter score_bias;    // b_a

 private:
  AttentionConfig config_;
};

inline constexpr std::size_t kNumClasses = 3;

// Softmax(G W + b) over the three sentiment classes.
class DenseHead {
 public:
  struct Trace {
    Tensor input;
    Tensor logits;
    Tensor probs;
  };

  DenseHead(std::size_t input_width, Rng& rng);

  std::size_t input_width() const { return weight.value.rows(); }

  Trace forward(const Tensor& g) const;
  // Takes the gradient at the pre-softmax logits.
  Tensor backward(const Trace& trace, const Tensor& d_logits);

  Parameter weight;
  Parameter bias;
};

}  // namespace hcms
