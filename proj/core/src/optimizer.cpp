#include "hcms/optimizer.hpp"

#include <cmath>

#include "hcms/errors.hpp"

namespace hcms {

void OptimizerConfig::validate(bool allow_zero_lr) const {
  if (!(lr > 0.0) && !(allow_zero_lr && lr == 0.0)) throw ConfigError("learning rate must be positive");
  if (!(beta1 > 0.0 && beta1 < 1.0)) throw ConfigError("beta1 must lie in (0, 1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw ConfigError("beta2 must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

void adam_step(Parameter& p, const OptimizerConfig& config) {
  ++p.step;
  const double t = static_cast<double>(p.step);
  const double m_correction = 1.0 - std::pow(config.beta1, t);
  const double v_correction = 1.0 - std::pow(config.beta2, t);
  for (std::size_t i = 0; i < p.value.size(); ++i) {
    const double g = p.grad[i];
    p.m[i] = config.beta1 * p.m[i] + (1.0 - config.beta1) * g;
    p.v[i] = config.beta2 * p.v[i] + (1.0 - config.beta2) * g * g;
    const double m_hat = p.m[i] / m_correction;
    const double v_hat = p.v[i] / v_correction;
    p.value[i] -= config.lr * m_hat / (std::sqrt(v_hat) + config.epsilon);
  }
  p.zero_grad();
}

}  // namespace hcms
