#pragma once

#include <complex>

namespace tbdecay {

using Complex = std::complex<double>;

// The single dimensionless boundary hopping Δ of the semi-infinite chain
// (bulk hopping rescaled to 1) together with its derived constants.
//
//   α   = sqrt(1 − Δ²)
//   γ₀  = 2Δ²/α               natural (Gamow) decay rate
//   √Z  = (α² + 1)/(2α²)      weight of the exponential pole contribution
//
// At Δ = 1 the pole reaches z = 0, γ₀ and √Z diverge and are reported as +inf.
class CouplingModel {
 public:
  explicit CouplingModel(double delta);

  double delta() const noexcept { return delta_; }
  double alpha() const noexcept { return alpha_; }
  double alpha_squared() const noexcept { return alpha_sq_; }
  double gamma0() const noexcept { return gamma0_; }
  double sqrt_z() const noexcept { return sqrt_z_; }

  // Δ == 1: strong-coupling limit, no exponential pole.
  bool is_strong_coupling() const noexcept { return alpha_sq_ == 0.0; }

 private:
  double delta_;
  double alpha_sq_;
  double alpha_;
  double gamma0_;
  double sqrt_z_;
};

// Gamow rate 2Δ²(1 − Δ²)^{-1/2}; defined for 0 < Δ < 1 only.
double gamow_rate(double delta);

}  // namespace tbdecay
