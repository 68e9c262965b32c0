#include "tbdecay/bpm/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tbdecay/errors.hpp"

#if defined(__SSE2__)
#include <pmmintrin.h>
#include <xmmintrin.h>
#endif

namespace tbdecay::bpm {

namespace {

// Evanescent tails underflow into subnormals during long runs, which slows the
// sweep by an order of magnitude.  Flush them while a step runs.
class ScopedFlushDenormals {
 public:
#if defined(__SSE2__)
  ScopedFlushDenormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | _MM_FLUSH_ZERO_ON | _MM_DENORMALS_ZERO_ON); }
  ~ScopedFlushDenormals() { _mm_setcsr(saved_); }

 private:
  unsigned int saved_;
#endif
};

}  // namespace

double FieldState::power() const {
  if (x.size() < 2) return 0.0;
  double s = 0.0;
  for (const Complex& v : psi) s += std::norm(v);
  return s * (x[1] - x[0]);
}

std::vector<double> absorber_profile(std::span<const double> x, double width, double strength) {
  std::vector<double> w(x.size(), 0.0);
  if (x.empty() || width <= 0.0 || strength <= 0.0) return w;
  const double lo = x.front() + width;
  const double hi = x.back() - width;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double depth = 0.0;
    if (x[i] < lo) depth = (lo - x[i]) / width;
    if (x[i] > hi) depth = (x[i] - hi) / width;
    w[i] = strength * depth * depth;
  }
  return w;
}

CrankNicolsonStepper::CrankNicolsonStepper(std::span<const double> x, double n_substrate, double reduced_wavelength,
                                           double dz_um)
    : n_(x.size()), dx_(x.size() > 1 ? x[1] - x[0] : 0.0), n_s_(n_substrate), hbar_(reduced_wavelength), dz_(dz_um) {
  if (n_ < 3) throw ConfigurationError("CrankNicolsonStepper: grid needs at least 3 points");
  if (!(dz_ > 0.0)) throw ConfigurationError("CrankNicolsonStepper: dz must be > 0");
  diag_rhs_.resize(n_);
  inv_pivot_.resize(n_);
  back_factor_.resize(n_);
  work_.resize(n_);
}

void CrankNicolsonStepper::set_profile(std::span<const double> index, std::span<const double> absorber) {
  if (index.size() != n_ || absorber.size() != n_) throw ConfigurationError("CrankNicolsonStepper: profile size mismatch");
  // A = H/ħ;  (1 + i g A) ψ' = (1 − i g A) ψ with g = dz/2.
  const double kinetic = hbar_ / (2.0 * n_s_ * dx_ * dx_);
  const double g = 0.5 * dz_;
  const Complex ig{0.0, g};
  off_lhs_ = ig * (-kinetic);
  off_rhs_ = -off_lhs_;
  Complex pivot{};
  for (std::size_t k = 0; k < n_; ++k) {
    const Complex a_kk = Complex(2.0 * kinetic + (n_s_ - index[k]) / hbar_, -absorber[k] / hbar_);
    const Complex lhs = 1.0 + ig * a_kk;
    diag_rhs_[k] = 1.0 - ig * a_kk;
    pivot = (k == 0) ? lhs : lhs - off_lhs_ * back_factor_[k - 1];
    inv_pivot_[k] = 1.0 / pivot;
    back_factor_[k] = off_lhs_ * inv_pivot_[k];
  }
}

void CrankNicolsonStepper::step(std::span<Complex> psi) {
  if (psi.size() != n_) throw ConfigurationError("CrankNicolsonStepper: field size mismatch");
  const ScopedFlushDenormals flush;
  // Forward sweep fused with the right-hand side.
  Complex prev{};
  for (std::size_t k = 0; k < n_; ++k) {
    Complex r = diag_rhs_[k] * psi[k];
    if (k > 0) r += off_rhs_ * psi[k - 1];
    if (k + 1 < n_) r += off_rhs_ * psi[k + 1];
    prev = (r - off_lhs_ * prev) * inv_pivot_[k];
    work_[k] = prev;
  }
  psi[n_ - 1] = work_[n_ - 1];
  for (std::size_t k = n_ - 1; k-- > 0;) psi[k] = work_[k] - back_factor_[k] * psi[k + 1];
}

namespace {

Complex project(std::span<const double> mode, std::span<const Complex> psi, double dx) {
  Complex s{};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (mode[i] != 0.0) s += mode[i] * psi[i];
  }
  return s * dx;
}

}  // namespace

PropagationResult propagate(const IndexMap& map, const WaveguideArraySpec& spec, const GuidedMode& mode,
                            const PropagationOptions& options) {
  options.grid.validate();
  if (!(options.z_max_mm > 0.0)) throw ConfigurationError("propagate: z_max must be > 0");
  if (!(options.output_step_mm > 0.0)) throw ConfigurationError("propagate: output step must be > 0");
  if (map.segments.empty()) throw ConfigurationError("propagate: empty index map");

  const double dz_um = options.grid.dz;
  const auto steps = static_cast<std::size_t>(std::llround(options.z_max_mm * 1000.0 / dz_um));
  if (steps == 0) throw ConfigurationError("propagate: z_max shorter than one step");
  const auto out_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(options.output_step_mm * 1000.0 / dz_um)));
  const auto map_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(options.map_dz_mm * 1000.0 / dz_um)));
  const double dx = map.x[1] - map.x[0];
  const auto x_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(options.map_dx_um / dx)));

  const std::vector<double> guide1 = mode.sample(map.x, 0.0);
  const std::vector<double> absorber = options.absorbers
                                           ? absorber_profile(map.x, options.grid.absorber_width, options.grid.absorber_strength)
                                           : std::vector<double>(map.x.size(), 0.0);

  PropagationResult result;
  result.mode = mode;
  result.coupling = hopping_ratio(spec, mode);
  result.final_state.x = map.x;

  std::vector<Complex>& psi = result.final_state.psi;
  if (options.initial_field) {
    if (options.initial_field->size() != map.x.size()) throw ConfigurationError("propagate: initial field size mismatch");
    psi = *options.initial_field;
  } else {
    psi.assign(guide1.begin(), guide1.end());
  }

  if (options.record_map) {
    IntensityMap m;
    for (std::size_t i = 0; i < map.x.size(); i += x_stride) m.x_um.push_back(map.x[i]);
    result.map = std::move(m);
  }
  auto record = [&](double z_mm, std::size_t step) {
    if (step % out_stride == 0 || step == steps) {
      result.z_mm.push_back(z_mm);
      result.c1.push_back(project(guide1, psi, dx));
      double p = 0.0;
      for (const Complex& v : psi) p += std::norm(v);
      result.power.push_back(p * dx);
    }
    if (result.map && (step % map_stride == 0 || step == steps)) {
      result.map->z_mm.push_back(z_mm);
      for (std::size_t i = 0; i < map.x.size(); i += x_stride) result.map->values.push_back(std::norm(psi[i]));
    }
  };

  CrankNicolsonStepper stepper(map.x, spec.n_substrate, spec.reduced_wavelength(), dz_um);
  const IndexSegment* active = nullptr;
  record(0.0, 0);
  for (std::size_t step = 1; step <= steps; ++step) {
    const double z_mid_mm = (static_cast<double>(step) - 0.5) * dz_um / 1000.0;
    const IndexSegment& seg = map.at(z_mid_mm);
    if (&seg != active) {
      stepper.set_profile(seg.index, absorber);
      active = &seg;
    }
    stepper.step(psi);
    record(static_cast<double>(step) * dz_um / 1000.0, step);
  }
  result.final_state.z_mm = static_cast<double>(steps) * dz_um / 1000.0;
  return result;
}

PropagationResult propagate(const WaveguideArraySpec& spec, const PropagationOptions& options) {
  spec.validate();
  const GuidedMode mode = solve_guided_mode(spec, options.grid.dx);
  const IndexMap map = build_index_map(spec, options.z_max_mm, options.grid);
  return propagate(map, spec, mode, options);
}

}  // namespace tbdecay::bpm
