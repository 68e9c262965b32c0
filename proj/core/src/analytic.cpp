#include "tbdecay/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tbdecay/bessel.hpp"
#include "tbdecay/errors.hpp"

namespace tbdecay {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kZeroAmplitude = 1e-14;

void require_time(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + ": time must be finite and >= 0");
  }
}

void require_site(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": site index must be >= 1, got " + std::to_string(n));
}

// Mean of f over the uniform grid Q_k = −π + 2πk/N; equals (2π)^{-1}∫f for
// 2π-periodic f up to the trapezoid error.
template <typename F>
Complex periodic_mean(std::size_t points, F&& f) {
  const double h = 2.0 * kPi / static_cast<double>(points);
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < points; ++k) {
    sum += f(-kPi + h * static_cast<double>(k));
  }
  return sum / static_cast<double>(points);
}

// Bessel values J_0(x) .. J_m(x) with m past both the turning point and the
// point where weight^m has decayed below the relative tolerance.
std::vector<double> bessel_table_for_series(double x, double weight) {
  int max_order = static_cast<int>(std::ceil(x)) + 40;
  if (weight < 1.0 && weight > 0.0) {
    const int decay_order = static_cast<int>(std::ceil(std::log(1e-17) / std::log(weight)));
    max_order = std::max(max_order, std::min(decay_order, 100000));
  }
  return special::bessel_j_sequence(max_order, x);
}

}  // namespace

BlochMode bloch_mode(const CouplingModel& model, double q) {
  return BlochMode{q, 2.0 * std::cos(q), reflection_coefficient(model, q)};
}

Complex reflection_coefficient(const CouplingModel& model, double q) {
  const double d2 = model.delta() * model.delta();
  const double c = 2.0 * std::cos(q);
  const Complex e = std::polar(1.0, q);
  return -(d2 - c * e) / (d2 - c * std::conj(e));
}

Complex eigenmode(const CouplingModel& model, double q, int n) {
  require_site(n, "eigenmode");
  const double d = model.delta();
  if (n == 1) {
    return 2.0 * kI * d * std::sin(q) / (d * d - 2.0 * std::cos(q) * std::polar(1.0, -q));
  }
  const double phase = q * static_cast<double>(n - 2);
  return std::polar(1.0, -phase) + reflection_coefficient(model, q) * std::polar(1.0, phase);
}

Complex spectrum(const CouplingModel& model, double q) {
  const double d = model.delta();
  const double d2 = d * d;
  const Complex num = d2 * std::polar(1.0, q) - 2.0 * std::cos(q);
  const Complex den = d2 - 1.0 - std::polar(1.0, 2.0 * q);
  return -num / (den * (2.0 * kPi * d));
}

std::size_t quadrature_points(const CouplingModel& model, double t) {
  require_time(t, "quadrature_points");
  double n = std::max(1024.0, std::ceil(16.0 * t));
  if (!model.is_strong_coupling()) {
    // Poles of 1/(1 + α² e^{-2iQ}) at |Im Q| = −ln α.
    const double pole_distance = -std::log(model.alpha());
    n = std::max(n, std::ceil(64.0 / pole_distance + 4.0 * t));
  }
  return static_cast<std::size_t>(n);
}

Complex exact_amplitude(const CouplingModel& model, double t) {
  return exact_amplitude(model, t, quadrature_points(model, t));
}

Complex exact_amplitude(const CouplingModel& model, double t, std::size_t points) {
  require_time(t, "exact_amplitude");
  if (points == 0) throw ConfigurationError("exact_amplitude: zero quadrature points");
  if (t == 0.0) return {1.0, 0.0};
  const double a2 = model.alpha_squared();
  return periodic_mean(points, [&](double q) {
    const Complex e2 = std::polar(1.0, -2.0 * q);
    return std::polar(1.0, 2.0 * t * std::cos(q)) * (1.0 - e2) / (1.0 + a2 * e2);
  });
}

Complex site_amplitude(const CouplingModel& model, int n, double t) {
  return site_amplitude(model, n, t, quadrature_points(model, t));
}

Complex site_amplitude(const CouplingModel& model, int n, double t, std::size_t points) {
  require_site(n, "site_amplitude");
  require_time(t, "site_amplitude");
  if (points == 0) throw ConfigurationError("site_amplitude: zero quadrature points");
  // ∫dQ = 2π · mean
  return 2.0 * kPi * periodic_mean(points, [&](double q) {
           return spectrum(model, q) * eigenmode(model, q, n) * std::polar(1.0, 2.0 * t * std::cos(q));
         });
}

Complex strong_coupling_amplitude(double t) {
  require_time(t, "strong_coupling_amplitude");
  if (t == 0.0) return {1.0, 0.0};
  if (t < 1e-4) {
    // J_1(2t)/t = 1 − t²/2 + t⁴/12 − ...
    const double t2 = t * t;
    return {1.0 - t2 / 2.0 + t2 * t2 / 12.0, 0.0};
  }
  return {special::bessel_j(1, 2.0 * t) / t, 0.0};
}

double asymptotic_amplitude(const CouplingModel& model, double t) {
  if (!(t > 0.0)) throw DomainError("asymptotic_amplitude: requires t > 0");
  const double a2 = model.alpha_squared();
  const double prefactor = (1.0 - a2) / ((1.0 + a2) * (1.0 + a2)) / std::sqrt(kPi);
  return prefactor * std::pow(t, -1.5) * std::cos(2.0 * t - 0.75 * kPi);
}

DecayDecomposition decay_decomposition(const CouplingModel& model, double t, NeumannForm form) {
  require_time(t, "decay_decomposition");
  if (model.is_strong_coupling()) {
    throw DomainError("decay_decomposition: undefined at delta = 1 (use strong_coupling_amplitude)");
  }
  const double a = model.alpha();
  const double a2 = model.alpha_squared();
  const double x = 2.0 * t;
  const double prefactor = 1.0 + 1.0 / a2;
  const double decay = std::exp(-0.5 * model.gamma0() * t);
  const double turning_order = x + 20.0;
  constexpr double kRelTol = 1e-14;
  constexpr double kBesselRel = 1e-13;

  DecayDecomposition out;
  out.t = t;
  out.exponential_part = model.sqrt_z() * decay;
  out.ill_conditioned = model.delta() > kDecompositionConditioningLimit;

  double magnitude = 0.0;  // Σ|terms| inside the bracket, sets the rounding scale
  double bracket = 0.0;

  if (form == NeumannForm::Resummed) {
    // s = J0 + (1 + 1/α²) [ Σ_{l≥1} J_{2l} α^{2l} − ½ e^{-γ₀t/2} ]
    const auto j = bessel_table_for_series(x, a);
    double sum = 0.0;
    double weight = 1.0;
    for (std::size_t order = 2; order < j.size(); order += 2) {
      weight *= a2;
      const double term = j[order] * weight;
      sum += term;
      magnitude += std::abs(term);
      if (static_cast<double>(order) > turning_order && std::abs(term) <= kRelTol * std::abs(sum)) break;
      if (weight == 0.0) break;
    }
    bracket = sum - 0.5 * decay;
    magnitude += 0.5 * decay;
    out.correction = j[0] + prefactor * bracket;
  } else {
    // s = J0 + (1 + 1/α²) [ ½ Σ_{l∈Z} J_l α^{-l} − Σ_{l≥0} J_{2l} α^{-2l} ]
    // with J_{-l} = (-1)^l J_l on the negative branch.  J_l(x)/α^l only
    // starts to decay once l > x/(2α).
    auto j = bessel_table_for_series(x, a);
    const int needed = static_cast<int>(std::ceil(x / a)) + 60;
    if (static_cast<int>(j.size()) <= needed) j = special::bessel_j_sequence(needed, x);
    double positive = 0.0;
    double even = 0.0;
    double inv_weight = 1.0;
    bool converged = false;
    for (std::size_t order = 0; order < j.size(); ++order) {
      const double term = j[order] * inv_weight;
      positive += term;
      magnitude += 0.5 * std::abs(term);
      if (order % 2 == 0) {
        even += term;
        magnitude += std::abs(term);
      }
      if (static_cast<double>(order) > turning_order && std::abs(term) <= kRelTol * std::abs(positive)) {
        converged = true;
        break;
      }
      inv_weight /= a;
    }
    if (!converged) throw NumericalError("decay_decomposition: Neumann series did not converge");
    double negative = 0.0;
    double weight = a;
    for (std::size_t order = 1; order < j.size(); ++order) {
      const double term = (order % 2 == 0 ? 1.0 : -1.0) * j[order] * weight;
      negative += term;
      magnitude += 0.5 * std::abs(term);
      if (static_cast<double>(order) > turning_order && std::abs(term) <= kRelTol * (std::abs(negative) + 1e-300)) break;
      weight *= a;
      if (weight == 0.0) break;
    }
    bracket = 0.5 * (positive + negative) - even;
    out.correction = j[0] + prefactor * bracket;
  }

  out.error_bound = kBesselRel * (1.0 + prefactor * magnitude) +
                    4.0 * std::numeric_limits<double>::epsilon() * std::abs(out.exponential_part);
  return out;
}

double effective_rate_from_amplitude(Complex c1, double t) {
  require_time(t, "effective_rate");
  if (t == 0.0) return 0.0;
  const double modulus = std::abs(c1);
  if (modulus <= kZeroAmplitude) return std::numeric_limits<double>::infinity();
  return -2.0 * std::log(modulus) / t;
}

double effective_rate(const CouplingModel& model, double t) {
  require_time(t, "effective_rate");
  if (t == 0.0) return 0.0;
  return effective_rate_from_amplitude(exact_amplitude(model, t), t);
}

}  // namespace tbdecay
