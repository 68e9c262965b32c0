#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tbdecay/bpm/mode_solver.hpp"
#include "tbdecay/bpm/waveguide.hpp"

namespace tbdecay::bpm {

using Complex = std::complex<double>;

struct FieldState {
  std::vector<double> x;  // µm
  std::vector<Complex> psi;
  double z_mm = 0.0;

  double power() const;  // ∫|ψ|² dx
};

// Quadratic complex-potential ramp, zero inside the window and `strength` at
// both edges.
std::vector<double> absorber_profile(std::span<const double> x, double width, double strength);

// Crank–Nicolson stepper for iħ ∂ψ/∂z = −(ħ²/2n_s) ∂²ψ/∂x² + (n_s − n(x) − iW(x)) ψ
// with ψ = 0 outside the window.  The tridiagonal factorization is cached per
// index profile.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(std::span<const double> x, double n_substrate, double reduced_wavelength, double dz_um);

  // Refactorizes for a new index profile and absorber.
  void set_profile(std::span<const double> index, std::span<const double> absorber);
  void step(std::span<Complex> psi);

  double dz_um() const { return dz_; }

 private:
  std::size_t n_;
  double dx_;
  double n_s_;
  double hbar_;
  double dz_;
  Complex off_lhs_;
  Complex off_rhs_;
  std::vector<Complex> diag_rhs_;
  std::vector<Complex> inv_pivot_;
  std::vector<Complex> back_factor_;
  std::vector<Complex> work_;
};

struct PropagationOptions {
  double z_max_mm = 50.0;
  GridSpec grid;
  double output_step_mm = 0.1;
  bool absorbers = true;
  bool record_map = false;
  double map_dz_mm = 0.5;
  double map_dx_um = 1.0;
  // Defaults to the fundamental mode of guide 1.
  std::optional<std::vector<Complex>> initial_field;
};

struct IntensityMap {
  std::vector<double> x_um;
  std::vector<double> z_mm;
  std::vector<double> values;  // z-major, |ψ|²
};

struct PropagationResult {
  std::vector<double> z_mm;
  std::vector<Complex> c1;    // ∫φ(x − x₁) ψ(x, z) dx
  std::vector<double> power;  // ∫|ψ|² dx
  FieldState final_state;
  std::optional<IntensityMap> map;
  HoppingRatio coupling;
  GuidedMode mode;
};

// Runs the geometry named by spec.geometry (semi-infinite or segmented) with
// guide 1 at x = 0.
PropagationResult propagate(const WaveguideArraySpec& spec, const PropagationOptions& options = {});

// Lower-level entry for an explicit index map.
PropagationResult propagate(const IndexMap& map, const WaveguideArraySpec& spec, const GuidedMode& mode,
                            const PropagationOptions& options);

}  // namespace tbdecay::bpm
