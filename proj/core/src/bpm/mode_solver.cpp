#include "tbdecay/bpm/mode_solver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "tbdecay/errors.hpp"

namespace tbdecay::bpm {

double GuidedMode::value(double x_pos, double center) const {
  const double u = x_pos - center;
  if (x.size() < 2 || u < x.front() || u > x.back()) return 0.0;
  const double h = x[1] - x[0];
  const double s = (u - x.front()) / h;
  const auto k = std::min(static_cast<std::size_t>(s), x.size() - 2);
  const double frac = s - static_cast<double>(k);
  return (1.0 - frac) * phi[k] + frac * phi[k + 1];
}

std::vector<double> GuidedMode::sample(std::span<const double> x_grid, double center) const {
  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double xv : x_grid) out.push_back(value(xv, center));
  return out;
}

double mode_window_half_width(const WaveguideArraySpec& spec) {
  return std::max(spec.first_gap, spec.spacing) + 6.0 * spec.channel_width + 40.0;
}

GuidedMode solve_guided_mode(const WaveguideArraySpec& spec, double dx) {
  spec.validate();
  if (!(dx > 0.0 && dx <= 0.5)) throw ConfigurationError("solve_guided_mode: dx must satisfy 0 < dx <= 0.5 um");

  const double half = mode_window_half_width(spec);
  const auto k_max = static_cast<long>(std::ceil(half / dx));
  const auto n = static_cast<lapack_int>(2 * k_max + 1);

  GuidedMode mode;
  mode.x.resize(static_cast<std::size_t>(n));
  for (lapack_int i = 0; i < n; ++i) mode.x[static_cast<std::size_t>(i)] = static_cast<double>(i - k_max) * dx;

  const double hbar = spec.reduced_wavelength();
  const double c = hbar * hbar / (2.0 * spec.n_substrate * dx * dx);
  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> off(static_cast<std::size_t>(n), -c);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    diag[i] = 2.0 * c - spec.delta_n * channel_shape(mode.x[i], spec.channel_width, spec.profile_exponent);
  }

  // Lowest two eigenpairs.
  lapack_int found = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) * 2);
  std::vector<lapack_int> support(4);
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, 2, 0.0,
                                         &found, w.data(), z.data(), n, support.data());
  if (info != 0 || found < 1) throw NumericalError("solve_guided_mode: eigensolver failed (info " + std::to_string(info) + ")");

  // Box states of the truncated window have E > 0; bound states E < 0.
  mode.bound_modes = static_cast<std::size_t>(std::count_if(w.begin(), w.begin() + found, [](double e) { return e < 0.0; }));
  if (mode.bound_modes == 0) throw NumericalError("solve_guided_mode: channel supports no bound mode");

  mode.energy = w[0];
  mode.phi.assign(z.begin(), z.begin() + n);
  double norm = 0.0;
  for (double v : mode.phi) norm += v * v;
  const double scale = (mode.phi[static_cast<std::size_t>(k_max)] < 0.0 ? -1.0 : 1.0) / std::sqrt(norm * dx);
  for (double& v : mode.phi) v *= scale;
  return mode;
}

double overlap_integral(const GuidedMode& mode, const WaveguideArraySpec& spec, double separation) {
  const double dx = mode.x[1] - mode.x[0];
  double sum = 0.0;
  for (std::size_t i = 0; i < mode.x.size(); ++i) {
    const double well = -spec.delta_n * channel_shape(mode.x[i], spec.channel_width, spec.profile_exponent);
    if (well == 0.0) continue;
    sum += mode.value(mode.x[i], separation) * well * mode.phi[i];
  }
  return sum * dx;
}

HoppingRatio hopping_ratio(const WaveguideArraySpec& spec, const GuidedMode& mode) {
  const double boundary = overlap_integral(mode, spec, spec.first_gap);
  const double bulk = overlap_integral(mode, spec, spec.spacing);
  if (std::abs(bulk) < 1e-300) throw NumericalError("hopping_ratio: bulk overlap integral vanishes");
  const double kappa = std::abs(bulk) / spec.reduced_wavelength() * 1000.0;
  return {boundary / bulk, kappa, boundary, bulk};
}

HoppingRatio hopping_ratio(const WaveguideArraySpec& spec, double dx) {
  return hopping_ratio(spec, solve_guided_mode(spec, dx));
}

double calibrate_channel_width(WaveguideArraySpec spec, double target_delta, double lo, double hi, double dx) {
  if (!(target_delta > 0.0 && target_delta < 1.0)) throw DomainError("calibrate_channel_width: target must be in (0, 1)");
  auto delta_at = [&](double w) {
    spec.channel_width = w;
    return hopping_ratio(spec, dx).delta;
  };
  double f_lo = delta_at(lo) - target_delta;
  const double f_hi = delta_at(hi) - target_delta;
  if (f_lo * f_hi > 0.0) throw NotFoundError("calibrate_channel_width: target not bracketed by [lo, hi]");
  for (int it = 0; it < 60 && hi - lo > 1e-6; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = delta_at(mid) - target_delta;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace tbdecay::bpm
