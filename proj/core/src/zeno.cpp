#include "tbdecay/zeno.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "tbdecay/analytic.hpp"
#include "tbdecay/errors.hpp"

namespace tbdecay {

MeasurementSchedule::MeasurementSchedule(double tau, std::size_t count) : tau_(tau), count_(count) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("MeasurementSchedule: tau must be > 0");
  if (count < 1) throw DomainError("MeasurementSchedule: count must be >= 1");
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Zeno: return "zeno";
    case Regime::AntiZeno: return "anti-zeno";
    case Regime::Neutral: return "neutral";
  }
  return "unknown";
}

std::vector<double> measured_survival(const CouplingModel& model, const MeasurementSchedule& schedule) {
  const double p_tau = std::norm(exact_amplitude(model, schedule.tau()));
  std::vector<double> out;
  out.reserve(schedule.count() + 1);
  double p = 1.0;
  out.push_back(p);
  for (std::size_t k = 1; k <= schedule.count(); ++k) {
    p *= p_tau;
    out.push_back(p);
  }
  return out;
}

namespace {

Regime regime_for(double gamma_meas, double gamma0) {
  if (gamma_meas < gamma0 * (1.0 - kRegimeTolerance)) return Regime::Zeno;
  if (gamma_meas > gamma0 * (1.0 + kRegimeTolerance)) return Regime::AntiZeno;
  return Regime::Neutral;
}

}  // namespace

ZenoCrossing zeno_crossing(const CouplingModel& model, const CrossingOptions& options) {
  if (model.is_strong_coupling()) throw DomainError("zeno_crossing: requires delta < 1");
  if (!(options.step > 0.0) || !(options.window > options.step)) {
    throw ConfigurationError("zeno_crossing: invalid scan step/window");
  }
  const double g0 = model.gamma0();
  auto excess = [&](double t) { return effective_rate(model, t) - g0; };

  const auto n = static_cast<std::size_t>(std::floor(options.window / options.step + 1e-9));
  std::optional<std::pair<double, double>> previous;  // (t, excess) of last finite point
  double closest_t = 0.0;
  double closest = std::numeric_limits<double>::infinity();

  for (std::size_t k = 1; k <= n; ++k) {
    const double t = options.step * static_cast<double>(k);
    const double f = excess(t);
    if (!std::isfinite(f)) continue;  // node of c_1
    if (std::abs(f) < closest) {
      closest = std::abs(f);
      closest_t = t;
    }
    if (f == 0.0) return {t, false};
    if (previous && previous->second < 0.0 && f > 0.0) {
      double lo = previous->first;
      double hi = t;
      double mid = 0.5 * (lo + hi);
      for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = excess(mid);
        if ((std::abs(fm) < options.tolerance && hi - lo < 1e-10 * hi) || hi - lo < 1e-13) break;
        if (!std::isfinite(fm) || fm > 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return {mid, false};
    }
    previous = {t, f};
  }
  if (closest <= kRegimeTolerance * g0) return {closest_t, true};
  throw NotFoundError("zeno_crossing: no crossing gamma_eff = gamma0 in (0, " + std::to_string(options.window) + "]");
}

AntiZenoPeak antizeno_peak(const CouplingModel& model, const PeakOptions& options) {
  if (!(options.step > 0.0) || !(options.window > 2.0 * options.step)) {
    throw ConfigurationError("antizeno_peak: invalid scan step/window");
  }
  const double g0 = model.gamma0();
  const double h = options.step;
  const auto n = static_cast<std::size_t>(std::floor(options.window / h + 1e-9));

  double g_prev2 = 0.0;  // γ_eff(0) = 0
  double t_prev = h, g_prev = effective_rate(model, h);
  for (std::size_t k = 2; k <= n; ++k) {
    const double t = h * static_cast<double>(k);
    const double g = effective_rate(model, t);
    const bool all_finite = std::isfinite(g_prev2) && std::isfinite(g_prev) && std::isfinite(g);
    if (all_finite && g_prev > g_prev2 && g_prev >= g && g_prev > g0) {
      // Vertex of the parabola through the three samples.
      const double curvature = g_prev2 - 2.0 * g_prev + g;
      double tau = t_prev;
      if (curvature < 0.0) tau = t_prev + 0.5 * h * (g_prev2 - g) / curvature;
      const double g_tau = effective_rate(model, tau);
      if (std::isfinite(g_tau) && g_tau >= g_prev) return {tau, g_tau};
      return {t_prev, g_prev};
    }
    g_prev2 = g_prev;
    t_prev = t;
    g_prev = g;
  }
  throw NotFoundError("antizeno_peak: no local maximum of gamma_eff above gamma0 in (0, " +
                      std::to_string(options.window) + "]");
}

ZenoClassification classify_regime(const CouplingModel& model, double tau) {
  if (!(tau > 0.0)) throw DomainError("classify_regime: tau must be > 0");
  const double g = effective_rate(model, tau);
  return {regime_for(g, model.gamma0()), g, model.gamma0()};
}

std::vector<RateRow> rate_table(const CouplingModel& model, std::vector<double> taus) {
  std::vector<RateRow> rows;
  rows.reserve(taus.size());
  for (double tau : taus) {
    const double g = tau > 0.0 ? effective_rate(model, tau) : 0.0;
    rows.push_back({tau, g, model.gamma0(), regime_for(g, model.gamma0())});
  }
  return rows;
}

}  // namespace tbdecay
