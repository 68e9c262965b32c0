#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tbdecay/bpm/waveguide.hpp"

namespace tbdecay::bpm {

// Fundamental mode of one isolated channel, centred at x = 0, of the
// stationary problem −(ħ²/2n_s) φ'' + V_w φ = E φ with V_w = n_s − n(x).
struct GuidedMode {
  std::vector<double> x;    // µm
  std::vector<double> phi;  // ∫φ² dx = 1, positive at the centre
  double energy = 0.0;      // E < 0, index units
  std::size_t bound_modes = 0;

  bool multimode() const { return bound_modes > 1; }
  // Linear interpolation of φ(x − center); zero outside the solved window.
  double value(double x_pos, double center = 0.0) const;
  std::vector<double> sample(std::span<const double> x_grid, double center) const;
};

// Half-width of the window on which the isolated mode is solved.
double mode_window_half_width(const WaveguideArraySpec& spec);

// Throws NumericalError when the channel supports no bound mode.  A second
// bound mode is reported through bound_modes, not as an error.
GuidedMode solve_guided_mode(const WaveguideArraySpec& spec, double dx = 0.05);

struct HoppingRatio {
  double delta;          // boundary / bulk overlap ratio
  double kappa_per_mm;   // bulk coupling rate, t = κ z
  double boundary_overlap;
  double bulk_overlap;
};

// ∫φ(x − s) V_w(x) φ(x) dx for s = a₀ and s = a.
double overlap_integral(const GuidedMode& mode, const WaveguideArraySpec& spec, double separation);

HoppingRatio hopping_ratio(const WaveguideArraySpec& spec, double dx = 0.05);
HoppingRatio hopping_ratio(const WaveguideArraySpec& spec, const GuidedMode& mode);

// Channel half-width w for which hopping_ratio(spec with w).delta equals the
// target, by bisection over [lo, hi] (Δ decreases with w at fixed spacing).
double calibrate_channel_width(WaveguideArraySpec spec, double target_delta, double lo = 2.0, double hi = 4.5,
                               double dx = 0.05);

}  // namespace tbdecay::bpm
