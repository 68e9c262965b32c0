#pragma once

#include <cstddef>
#include <limits>

#include "tbdecay/coupling_model.hpp"

// Exact solution of the decay of the edge site of a semi-infinite
// tight-binding chain with boundary hopping Δ and bulk hopping 1.
//
// Eigenstates are Bloch waves c_n(t) = u_n(Q) exp(iΩ(Q)t) with Ω(Q) = 2cos Q,
// reflected at the boundary defect with unit-modulus amplitude r(Q).  The
// spectrum F(Q) of the state localized on site 1 turns the eigenmode
// superposition into the amplitude c_1(t) = (2π)^{-1} ∫ e^{2it cos Q}
// (1 − e^{-2iQ}) / (1 + α² e^{-2iQ}) dQ, evaluated here by periodic
// trapezoidal quadrature.
namespace tbdecay {

struct BlochMode {
  double q;
  double omega;
  Complex r;
};

BlochMode bloch_mode(const CouplingModel& model, double q);

Complex reflection_coefficient(const CouplingModel& model, double q);

// u_n(Q).  Site 1 always uses 2iΔ sin Q / (Δ² − 2cos Q e^{-iQ}), which is
// finite at cos Q = 0.
Complex eigenmode(const CouplingModel& model, double q, int n);

Complex spectrum(const CouplingModel& model, double q);

// Default trapezoid point count for time t.  Grows with t (phase e^{2it cos Q})
// and with 1/|ln α| (poles of the integrand approach the real axis as Δ → 0).
std::size_t quadrature_points(const CouplingModel& model, double t);

Complex exact_amplitude(const CouplingModel& model, double t);
Complex exact_amplitude(const CouplingModel& model, double t, std::size_t points);

// ∫ F(Q) u_n(Q) e^{iΩ(Q)t} dQ, built from spectrum() and eigenmode().
Complex site_amplitude(const CouplingModel& model, int n, double t);
Complex site_amplitude(const CouplingModel& model, int n, double t, std::size_t points);

// c_1(t) at Δ = 1: J_1(2t)/t, and 1 at t = 0.
Complex strong_coupling_amplitude(double t);

// Stationary-phase tail π^{-1/2} (1 − α²)/(1 + α²)² t^{-3/2} cos(2t − 3π/4).
double asymptotic_amplitude(const CouplingModel& model, double t);

enum class NeumannForm {
  // Series with the e^{±γ₀t/2} generating-function pieces cancelled exactly.
  Resummed,
  // Two-sided Neumann series summed term by term; partial sums grow like
  // e^{γ₀t/2}, so accuracy degrades at large γ₀t.
  Literal,
};

// Δ above which 1/α^l amplification dominates the error budget.
inline constexpr double kDecompositionConditioningLimit = 0.95;

struct DecayDecomposition {
  double t = 0.0;
  Complex exponential_part;  // √Z e^{-γ₀t/2}
  Complex correction;        // s(t)
  double error_bound = 0.0;  // estimated absolute rounding/truncation error of the sum
  bool ill_conditioned = false;

  Complex total() const { return exponential_part + correction; }
};

// c_1(t) = √Z e^{-γ₀t/2} + s(t), defined for 0 < Δ < 1.
DecayDecomposition decay_decomposition(const CouplingModel& model, double t,
                                       NeumannForm form = NeumannForm::Resummed);

// γ_eff(t) = −ln|c_1(t)|²/t, 0 at t = 0, +inf where c_1 vanishes.
double effective_rate(const CouplingModel& model, double t);
double effective_rate_from_amplitude(Complex c1, double t);

inline bool is_rate_sentinel(double rate) { return rate == std::numeric_limits<double>::infinity(); }

}  // namespace tbdecay
