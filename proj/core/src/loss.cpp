#include "hcms/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hcms/errors.hpp"

namespace hcms {

namespace {

void check_label(std::size_t label, const Tensor& probs) {
  if (label >= probs.size()) {
    throw LabelError("label " + std::to_string(label) + " outside " + std::to_string(probs.size()) + " classes");
  }
}

}  // namespace

double cross_entropy(const Tensor& target, const Tensor& probs) {
  if (target.shape() != probs.shape()) {
    throw DimensionError("cross_entropy: target " + to_string(target.shape()) + " vs probabilities " +
                         to_string(probs.shape()));
  }
  std::size_t hot = target.size();
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target[i] == 1.0 && hot == target.size()) {
      hot = i;
    } else if (target[i] != 0.0) {
      throw LabelError("cross_entropy: target is not one-hot");
    }
  }
  if (hot == target.size()) throw LabelError("cross_entropy: target has no hot entry");
  return cross_entropy(hot, probs);
}

double cross_entropy(std::size_t label, const Tensor& probs) {
  check_label(label, probs);
  return -std::log(std::max(probs[label], kProbabilityFloor));
}

Tensor one_hot(std::size_t label, std::size_t classes) {
  Tensor t({classes});
  if (label >= classes) throw LabelError("label " + std::to_string(label) + " outside " + std::to_string(classes) + " classes");
  t[label] = 1.0;
  return t;
}

Tensor cross_entropy_logit_grad(std::size_t label, const Tensor& probs) {
  check_label(label, probs);
  Tensor g = probs;
  g[label] -= 1.0;
  return g;
}

Tensor cross_entropy_prob_grad(std::size_t label, const Tensor& probs) {
  check_label(label, probs);
  Tensor g = Tensor::zeros_like(probs);
  if (probs[label] >= kProbabilityFloor) g[label] = -1.0 / probs[label];
  return g;
}

}  // namespace hcms
