#pragma once

#include "hcms/tensor.hpp"

namespace hcms {

struct OptimizerConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.99;
  double epsilon = 1e-7;

  // Throws ConfigError unless 0 < beta1, beta2 < 1, lr > 0 and epsilon > 0.
  // A zero lr (parameters frozen) is accepted only when asked for.
  void validate(bool allow_zero_lr = false) const;

  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

// One bias-corrected Adam update from p.grad, which is zeroed afterwards.
void adam_step(Parameter& p, const OptimizerConfig& config);

}  // namespace hcms
