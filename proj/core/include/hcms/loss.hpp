#pragma once

#include <cstddef>

#include "hcms/tensor.hpp"

namespace hcms {

// Probabilities are floored here before the log so the loss stays finite.
inline constexpr double kProbabilityFloor = 1e-12;

// -sum(Y * log(Y')) for a one-hot target. Throws LabelError when `target` is
// not one-hot and DimensionError when the shapes differ.
double cross_entropy(const Tensor& target, const Tensor& probs);
double cross_entropy(std::size_t label, const Tensor& probs);

Tensor one_hot(std::size_t label, std::size_t classes);

// dL/dlogits for softmax followed by cross-entropy: Y' - Y.
Tensor cross_entropy_logit_grad(std::size_t label, const Tensor& probs);
// dL/dY' on its own (zero where the floor is active), for composing with
// softmax_backward.
Tensor cross_entropy_prob_grad(std::size_t label, const Tensor& probs);

}  // namespace hcms
