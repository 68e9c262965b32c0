#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "tbdecay/analytic.hpp"
#include "tbdecay/bpm/propagator.hpp"
#include "tbdecay/errors.hpp"

using namespace tbdecay;
using namespace tbdecay::bpm;

TEST_CASE("absorber profile") {
  std::vector<double> x;
  for (int i = 0; i <= 100; ++i) x.push_back(i);
  const auto w = absorber_profile(x, 20.0, 1e-3);
  CHECK(w.front() == doctest::Approx(1e-3));
  CHECK(w.back() == doctest::Approx(1e-3));
  CHECK(w[50] == 0.0);
  CHECK(w[20] == 0.0);
  CHECK(w[10] == doctest::Approx(0.25e-3));
}

TEST_CASE("isolated guide keeps its mode over 50 mm") {
  WaveguideArraySpec spec;
  spec.n_guides = 1;
  PropagationOptions opts;
  opts.z_max_mm = 50.0;
  opts.output_step_mm = 1.0;
  const auto r = propagate(spec, opts);
  REQUIRE(r.z_mm.size() == 51);
  CHECK(r.z_mm.back() == doctest::Approx(50.0));
  for (const auto& c : r.c1) {
    CHECK(std::abs(c) >= 0.999);
    CHECK(std::abs(std::abs(c) - 1.0) < 1e-3);
  }
}

TEST_CASE("power is conserved without absorbers") {
  WaveguideArraySpec spec;
  spec.n_guides = 6;
  PropagationOptions opts;
  opts.z_max_mm = 10.0;
  opts.output_step_mm = 1.0;
  opts.absorbers = false;
  const auto r = propagate(spec, opts);
  for (double p : r.power) CHECK(std::abs(p - r.power.front()) < 1e-6);
  CHECK(r.power.front() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("power never grows with absorbers") {
  WaveguideArraySpec spec;
  spec.n_guides = 6;
  PropagationOptions opts;
  opts.z_max_mm = 10.0;
  opts.output_step_mm = 0.5;
  const auto r = propagate(spec, opts);
  for (std::size_t k = 1; k < r.power.size(); ++k) CHECK(r.power[k] <= r.power[k - 1] + 1e-12);
}

namespace {
std::vector<Complex> run_tilted_gaussian(double margin, double kx, double z_mm, std::vector<double>& x) {
  WaveguideArraySpec spec;
  spec.n_guides = 1;
  PropagationOptions opts;
  opts.grid.margin = margin;
  x = build_index_profile(spec, opts.grid).x;
  std::vector<Complex> field(x.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double u = (x[i] - 40.0) / 8.0;
    field[i] = std::exp(-0.5 * u * u) * std::polar(1.0, kx * x[i]);
  }
  opts.z_max_mm = z_mm;
  opts.output_step_mm = z_mm;
  opts.initial_field = field;
  return propagate(spec, opts).final_state.psi;
}
}  // namespace

TEST_CASE("absorbers swallow outgoing radiation") {
  // A tilted Gaussian launched toward the right edge, stopped when a specular
  // reflection would be back at the window centre.  The returned field is the
  // difference from the same launch in a window too wide to reach its edge.
  const WaveguideArraySpec spec;
  const GridSpec grid;
  const double margin = 80.0;
  const double path = (margin + grid.absorber_width - 40.0) + grid.absorber_width + margin;
  for (double kx : {1.0, 2.0}) {
    const double speed_um_per_mm = 1000.0 * spec.reduced_wavelength() * kx / spec.n_substrate;
    const double z = path / speed_um_per_mm;
    std::vector<double> xa, xr;
    const auto a = run_tilted_gaussian(margin, kx, z, xa);
    const auto r = run_tilted_gaussian(600.0, kx, z, xr);
    std::size_t offset = 0;
    while (xr[offset] < xa.front() - 1e-9) ++offset;
    REQUIRE(std::abs(xr[offset] - xa.front()) < 1e-9);
    double launched = 0.0, returned = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) {
      const double u = (xa[i] - 40.0) / 8.0;
      launched += std::exp(-u * u);
      if (std::abs(xa[i]) < margin) returned += std::norm(a[i] - r[i + offset]);
    }
    INFO("kx = " << kx << ", returned amplitude = " << std::sqrt(returned / launched));
    CHECK(std::sqrt(returned / launched) < 1e-3);
  }
}

TEST_CASE("grid refinement changes |c1| by less than 1e-3") {
  WaveguideArraySpec spec;
  spec.n_guides = 16;
  PropagationOptions coarse;
  coarse.z_max_mm = 5.0;
  coarse.output_step_mm = 5.0;
  coarse.grid.dx = 0.1;
  coarse.grid.dz = 1.0;
  PropagationOptions fine = coarse;
  fine.grid.dx = 0.05;
  fine.grid.dz = 0.5;
  const double a = std::abs(propagate(spec, coarse).c1.back());
  const double b = std::abs(propagate(spec, fine).c1.back());
  INFO("coarse = " << a << ", fine = " << b);
  CHECK(std::abs(a - b) < 1e-3);
}

TEST_CASE("weak-coupling array follows the lattice model") {
  WaveguideArraySpec spec;
  spec.n_guides = 20;
  PropagationOptions opts;
  opts.z_max_mm = 10.0;
  opts.output_step_mm = 1.0;
  const auto r = propagate(spec, opts);
  const CouplingModel m(r.coupling.delta);
  for (std::size_t k = 0; k < r.z_mm.size(); ++k) {
    const double t = r.coupling.kappa_per_mm * r.z_mm[k];
    CHECK(std::abs(std::abs(r.c1[k]) - std::abs(exact_amplitude(m, t))) < 0.02);
  }
}

TEST_CASE("one segment matches the semi-infinite array") {
  WaveguideArraySpec plain;
  plain.n_guides = 16;
  WaveguideArraySpec seg = plain;
  seg.geometry = ZenoSegmented{3.0, 3.0};
  PropagationOptions opts;
  opts.z_max_mm = 3.0;
  opts.output_step_mm = 0.5;
  const auto a = propagate(plain, opts);
  const auto b = propagate(seg, opts);
  REQUIRE(a.c1.size() == b.c1.size());
  for (std::size_t k = 0; k < a.c1.size(); ++k) CHECK(std::abs(std::abs(a.c1[k]) - std::abs(b.c1[k])) < 1e-5);
}

TEST_CASE("intensity map") {
  WaveguideArraySpec spec;
  spec.n_guides = 4;
  PropagationOptions opts;
  opts.z_max_mm = 2.0;
  opts.record_map = true;
  opts.map_dz_mm = 0.5;
  opts.map_dx_um = 2.0;
  const auto r = propagate(spec, opts);
  REQUIRE(r.map.has_value());
  CHECK(r.map->z_mm.size() == 5);
  CHECK(r.map->values.size() == r.map->z_mm.size() * r.map->x_um.size());
  CHECK(r.map->x_um[1] - r.map->x_um[0] == doctest::Approx(2.0));
  for (double v : r.map->values) CHECK(v >= 0.0);
}

TEST_CASE("configuration errors") {
  WaveguideArraySpec spec;
  spec.n_guides = 2;
  PropagationOptions opts;
  opts.z_max_mm = -1.0;
  CHECK_THROWS_AS(propagate(spec, opts), ConfigurationError);
  opts = {};
  opts.grid.dz = 50.0;
  CHECK_THROWS_AS(propagate(spec, opts), ConfigurationError);
  opts = {};
  opts.initial_field = std::vector<Complex>(3);
  CHECK_THROWS_AS(propagate(spec, opts), ConfigurationError);
}

TEST_CASE("strong-coupling array tracks the lattice over the first oscillations") {
  // The continuous model smooths the lattice dynamics; through the first three
  // revivals |c1| stays within 0.15 of the lattice value.
  WaveguideArraySpec spec;
  spec.first_gap = 12.5;
  spec.n_guides = 30;
  PropagationOptions opts;
  opts.z_max_mm = 16.0;
  opts.output_step_mm = 0.25;
  const auto r = propagate(spec, opts);
  const CouplingModel m(r.coupling.delta);
  double worst = 0.0;
  for (std::size_t k = 0; k < r.z_mm.size(); ++k) {
    const double t = r.coupling.kappa_per_mm * r.z_mm[k];
    worst = std::max(worst, std::abs(std::abs(r.c1[k]) - std::abs(exact_amplitude(m, t))));
  }
  INFO("max deviation = " << worst);
  CHECK(worst < 0.15);
}
