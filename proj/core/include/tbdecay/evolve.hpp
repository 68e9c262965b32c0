#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tbdecay/coupling_model.hpp"

namespace tbdecay {

// Sampled solution of the lattice equations of motion
//   i ċ_1 = −Δ c_2,  i ċ_2 = −c_3 − Δ c_1,  i ċ_n = −(c_{n+1} + c_{n−1})
// on a chain truncated after n_sites sites.
class AmplitudeTrajectory {
 public:
  AmplitudeTrajectory(double delta, std::size_t n_sites, std::vector<double> times, std::vector<Complex> amplitudes);

  double delta() const noexcept { return delta_; }
  std::size_t n_sites() const noexcept { return n_sites_; }
  std::size_t size() const noexcept { return times_.size(); }
  std::span<const double> times() const noexcept { return times_; }

  // Amplitudes of all sites at sample k (index 0 is site 1).
  std::span<const Complex> at(std::size_t k) const;
  // c_n(t_k), n is 1-based.
  Complex amplitude(std::size_t k, std::size_t n) const;
  std::vector<Complex> site_series(std::size_t n) const;
  double norm(std::size_t k) const;

 private:
  double delta_;
  std::size_t n_sites_;
  std::vector<double> times_;
  std::vector<Complex> amplitudes_;  // row-major, size() × n_sites
};

struct EvolveOptions {
  double dt = 0.005;
  // 0 selects the smallest admissible size, ceil(2·t_max) + 20.
  std::size_t n_sites = 0;
  // Store every `sample_stride` steps; 0 selects ceil(0.1/dt).
  std::size_t sample_stride = 0;
  bool full_resolution = false;
  // Defaults to c_n(0) = δ_{n,1}; otherwise must have n_sites entries.
  std::optional<std::vector<Complex>> initial_state;
};

std::size_t minimum_sites(double t_max);

// Classical RK4 with a fixed step and a hard wall after site N.
AmplitudeTrajectory evolve(double delta, double t_max, const EvolveOptions& options = {});
AmplitudeTrajectory evolve(const CouplingModel& model, double t_max, const EvolveOptions& options = {});

std::vector<double> survival_probability(const AmplitudeTrajectory& trajectory);

}  // namespace tbdecay
