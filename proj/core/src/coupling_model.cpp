#include "tbdecay/coupling_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tbdecay/errors.hpp"

namespace tbdecay {

CouplingModel::CouplingModel(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw DomainError("CouplingModel: delta must satisfy 0 < delta <= 1, got " + std::to_string(delta));
  }
  // 1 − Δ² computed as (1 − Δ)(1 + Δ) keeps α² + Δ² = 1 to rounding.
  alpha_sq_ = (1.0 - delta) * (1.0 + delta);
  alpha_ = std::sqrt(alpha_sq_);
  if (alpha_sq_ == 0.0) {
    gamma0_ = std::numeric_limits<double>::infinity();
    sqrt_z_ = std::numeric_limits<double>::infinity();
  } else {
    gamma0_ = 2.0 * delta * delta / alpha_;
    sqrt_z_ = (alpha_sq_ + 1.0) / (2.0 * alpha_sq_);
  }
}

double gamow_rate(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("gamow_rate: requires 0 < delta < 1 (divergent at delta = 1), got " + std::to_string(delta));
  }
  return 2.0 * delta * delta / std::sqrt((1.0 - delta) * (1.0 + delta));
}

}  // namespace tbdecay
