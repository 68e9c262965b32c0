#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "tbdecay/coupling_model.hpp"

namespace tbdecay {

// Ideal projective measurements of site 1 every `tau`, `count` times.
class MeasurementSchedule {
 public:
  MeasurementSchedule(double tau, std::size_t count);

  double tau() const noexcept { return tau_; }
  std::size_t count() const noexcept { return count_; }

 private:
  double tau_;
  std::size_t count_;
};

enum class Regime { Zeno, AntiZeno, Neutral };

std::string_view to_string(Regime regime);

struct ZenoClassification {
  Regime regime;
  double gamma_meas;  // γ_eff(τ)
  double gamma0;
};

// Relative band around γ₀ classified as Neutral.
inline constexpr double kRegimeTolerance = 1e-6;

// P_k = P(τ)^k for k = 0..count: each collapse restarts the identical decay.
std::vector<double> measured_survival(const CouplingModel& model, const MeasurementSchedule& schedule);

struct CrossingOptions {
  double step = 0.1;
  double window = 200.0;
  double tolerance = 1e-8;  // on |γ_eff − γ₀|
};

struct ZenoCrossing {
  double tau_star;
  // γ_eff touched γ₀ without a sign change on the scan grid.
  bool tangential = false;
};

// Smallest τ > 0 with γ_eff(τ) = γ₀.  Requires 0 < Δ < 1.
ZenoCrossing zeno_crossing(const CouplingModel& model, const CrossingOptions& options = {});

struct PeakOptions {
  double step = 0.01;
  double window = 50.0;
};

struct AntiZenoPeak {
  double tau;
  double gamma_eff;
};

// First local maximum of γ_eff(t) lying above γ₀.
AntiZenoPeak antizeno_peak(const CouplingModel& model, const PeakOptions& options = {});

ZenoClassification classify_regime(const CouplingModel& model, double tau);

struct RateRow {
  double tau;
  double gamma_eff;
  double gamma0;
  Regime regime;
};

std::vector<RateRow> rate_table(const CouplingModel& model, std::vector<double> taus);

}  // namespace tbdecay
