#include "tbdecay/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tbdecay/errors.hpp"

namespace tbdecay {

AmplitudeTrajectory::AmplitudeTrajectory(double delta, std::size_t n_sites, std::vector<double> times,
                                         std::vector<Complex> amplitudes)
    : delta_(delta), n_sites_(n_sites), times_(std::move(times)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != times_.size() * n_sites_) {
    throw ConfigurationError("AmplitudeTrajectory: amplitude block does not match times × sites");
  }
}

std::span<const Complex> AmplitudeTrajectory::at(std::size_t k) const {
  return std::span<const Complex>(amplitudes_).subspan(k * n_sites_, n_sites_);
}

Complex AmplitudeTrajectory::amplitude(std::size_t k, std::size_t n) const {
  if (n < 1 || n > n_sites_) throw DomainError("AmplitudeTrajectory: site out of range");
  return amplitudes_.at(k * n_sites_ + (n - 1));
}

std::vector<Complex> AmplitudeTrajectory::site_series(std::size_t n) const {
  std::vector<Complex> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) out.push_back(amplitude(k, n));
  return out;
}

double AmplitudeTrajectory::norm(std::size_t k) const {
  double s = 0.0;
  for (const Complex& c : at(k)) s += std::norm(c);
  return s;
}

std::size_t minimum_sites(double t_max) {
  return static_cast<std::size_t>(std::ceil(2.0 * t_max)) + 20;
}

namespace {

// out = i · (H' c) where (H'c)_1 = Δc_2, (H'c)_2 = c_3 + Δc_1, (H'c)_n = c_{n+1} + c_{n−1}.
void derivative(double delta, std::span<const Complex> c, std::span<Complex> out) {
  const std::size_t n = c.size();
  auto times_i = [](Complex z) { return Complex(-z.imag(), z.real()); };
  if (n == 1) {
    out[0] = 0.0;
    return;
  }
  out[0] = times_i(delta * c[1]);
  out[1] = times_i(delta * c[0] + (n > 2 ? c[2] : Complex{}));
  for (std::size_t k = 2; k + 1 < n; ++k) out[k] = times_i(c[k - 1] + c[k + 1]);
  if (n > 2) out[n - 1] = times_i(c[n - 2]);
}

}  // namespace

AmplitudeTrajectory evolve(double delta, double t_max, const EvolveOptions& options) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("evolve: delta must lie in [0, 1]");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigurationError("evolve: t_max must be > 0");
  if (!(options.dt > 0.0 && options.dt <= 0.01)) throw ConfigurationError("evolve: dt must satisfy 0 < dt <= 0.01");

  const std::size_t required = minimum_sites(t_max);
  const std::size_t n_sites = options.n_sites == 0 ? required : options.n_sites;
  if (n_sites < required) {
    throw ConfigurationError("evolve: n_sites = " + std::to_string(n_sites) + " is below 2*t_max + 20 = " +
                             std::to_string(required) + "; boundary reflection would reach site 1");
  }

  const auto steps = static_cast<std::size_t>(std::ceil(t_max / options.dt - 1e-9));
  const double dt = t_max / static_cast<double>(steps);
  std::size_t stride = options.sample_stride;
  if (options.full_resolution) stride = 1;
  if (stride == 0) stride = static_cast<std::size_t>(std::ceil(0.1 / options.dt - 1e-9));
  stride = std::max<std::size_t>(stride, 1);

  std::vector<Complex> state(n_sites, Complex{});
  if (options.initial_state) {
    if (options.initial_state->size() != n_sites) {
      throw ConfigurationError("evolve: initial_state size does not match n_sites");
    }
    state = *options.initial_state;
  } else {
    state[0] = 1.0;
  }

  std::vector<double> times;
  std::vector<Complex> amplitudes;
  const std::size_t expected = steps / stride + 2;
  times.reserve(expected);
  amplitudes.reserve(expected * n_sites);
  auto record = [&](double t) {
    times.push_back(t);
    amplitudes.insert(amplitudes.end(), state.begin(), state.end());
  };
  record(0.0);

  std::vector<Complex> k1(n_sites), k2(n_sites), k3(n_sites), k4(n_sites), tmp(n_sites);
  const double half = 0.5 * dt;
  for (std::size_t step = 1; step <= steps; ++step) {
    derivative(delta, state, k1);
    for (std::size_t i = 0; i < n_sites; ++i) tmp[i] = state[i] + half * k1[i];
    derivative(delta, tmp, k2);
    for (std::size_t i = 0; i < n_sites; ++i) tmp[i] = state[i] + half * k2[i];
    derivative(delta, tmp, k3);
    for (std::size_t i = 0; i < n_sites; ++i) tmp[i] = state[i] + dt * k3[i];
    derivative(delta, tmp, k4);
    for (std::size_t i = 0; i < n_sites; ++i) {
      state[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (step % stride == 0 || step == steps) record(static_cast<double>(step) * dt);
  }

  return AmplitudeTrajectory(delta, n_sites, std::move(times), std::move(amplitudes));
}

AmplitudeTrajectory evolve(const CouplingModel& model, double t_max, const EvolveOptions& options) {
  return evolve(model.delta(), t_max, options);
}

std::vector<double> survival_probability(const AmplitudeTrajectory& trajectory) {
  std::vector<double> p;
  p.reserve(trajectory.size());
  for (std::size_t k = 0; k < trajectory.size(); ++k) p.push_back(std::norm(trajectory.amplitude(k, 1)));
  return p;
}

}  // namespace tbdecay
