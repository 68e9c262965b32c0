#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "tbdecay/analytic.hpp"
#include "tbdecay/bpm/mode_solver.hpp"
#include "tbdecay/bpm/propagator.hpp"
#include "tbdecay/errors.hpp"
#include "tbdecay/evolve.hpp"
#include "tbdecay/zeno.hpp"

namespace tbdecay::cli {

namespace {

std::size_t grid_count(double tmax, double dt, const char* what) {
  if (!(tmax > 0.0) || !std::isfinite(tmax)) throw ConfigurationError(std::string(what) + ": --tmax must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigurationError(std::string(what) + ": --dt must be > 0");
  const double n = std::round(tmax / dt);
  if (n > 1e7) throw ConfigurationError(std::string(what) + ": too many output points");
  return static_cast<std::size_t>(n);
}

double regime_code(Regime r) {
  switch (r) {
    case Regime::Zeno: return -1.0;
    case Regime::Neutral: return 0.0;
    case Regime::AntiZeno: return 1.0;
  }
  return 0.0;
}

bpm::WaveguideArraySpec resolve_spec(const WaveguideOptions& o, double length_mm) {
  bpm::WaveguideArraySpec spec = o.spec;
  if (o.segment_mm) spec.geometry = bpm::ZenoSegmented{*o.segment_mm, length_mm};
  spec.validate();
  o.grid.validate();
  return spec;
}

}  // namespace

void run_exact(const ExactOptions& o, const CommonOptions& common) {
  const CouplingModel model(o.delta);
  const std::size_t n = grid_count(o.tmax, o.dt, "exact");
  io::CsvTable table;
  table.header = {"t[1/hop]", "Re_c1", "Im_c1", "P", "gamma_eff[hop]"};
  table.rows.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * o.dt;
    const Complex c1 = exact_amplitude(model, t);
    table.rows.push_back({t, c1.real(), c1.imag(), std::norm(c1), effective_rate_from_amplitude(c1, t)});
  }
  write_table(common.out, common.format, table,
              {{"delta", o.delta}, {"gamma0", model.gamma0()}, {"sqrtZ", model.sqrt_z()}});
}

void run_evolve(const EvolveRunOptions& o, const CommonOptions& common) {
  grid_count(o.tmax, o.sample, "evolve");
  EvolveOptions opts;
  opts.dt = o.dt;
  opts.n_sites = o.sites;
  opts.sample_stride = static_cast<std::size_t>(std::max(1.0, std::round(o.sample / o.dt)));
  const AmplitudeTrajectory traj = evolve(o.delta, o.tmax, opts);

  io::CsvTable table;
  table.header = {"t[1/hop]", "Re_c1", "Im_c1", "P", "norm"};
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Complex c1 = traj.amplitude(k, 1);
    table.rows.push_back({traj.times()[k], c1.real(), c1.imag(), std::norm(c1), traj.norm(k)});
  }
  write_table(common.out, common.format, table,
              {{"delta", o.delta}, {"n_sites", static_cast<double>(traj.n_sites())}, {"dt", o.dt}});

  if (!o.map_out.empty()) {
    const std::size_t sites = std::min(o.map_sites, traj.n_sites());
    std::vector<double> columns, rows, values;
    for (std::size_t n = 1; n <= sites; ++n) columns.push_back(static_cast<double>(n));
    for (std::size_t k = 0; k < traj.size(); ++k) {
      rows.push_back(traj.times()[k]);
      for (std::size_t n = 1; n <= sites; ++n) values.push_back(std::abs(traj.amplitude(k, n)));
    }
    write_matrix_file(o.map_out, "t[1/hop]\\site", columns, rows, values);
  }
}

void run_zeno(const ZenoOptions& o, const CommonOptions& common) {
  const CouplingModel model(o.delta);
  Summary summary{{"delta", o.delta}, {"gamma0", model.gamma0()}};

  if (model.is_strong_coupling()) {
    summary.emplace_back("tau_star", std::string("undefined"));
  } else {
    const ZenoCrossing crossing = zeno_crossing(model);
    summary.emplace_back("tau_star", crossing.tau_star);
    summary.emplace_back("tau_star_tangential", crossing.tangential ? 1.0 : 0.0);
  }
  try {
    const AntiZenoPeak peak = antizeno_peak(model);
    summary.emplace_back("antizeno_tau", peak.tau);
    summary.emplace_back("antizeno_gamma_eff", peak.gamma_eff);
  } catch (const NotFoundError&) {
    summary.emplace_back("antizeno_tau", std::string("none"));
  }

  if (o.tau) {
    const ZenoClassification c = classify_regime(model, *o.tau);
    const MeasurementSchedule schedule(*o.tau, o.count);
    const auto p = measured_survival(model, schedule);
    const double total = *o.tau * static_cast<double>(o.count);
    summary.emplace_back("tau", *o.tau);
    summary.emplace_back("gamma_eff_tau", c.gamma_meas);
    summary.emplace_back("regime", std::string(to_string(c.regime)));
    summary.emplace_back("count", static_cast<double>(o.count));
    summary.emplace_back("measured_survival", p.back());
    summary.emplace_back("free_survival", std::norm(exact_amplitude(model, total)));
  }
  write_summary(common.out, common.format, summary);

  if (!o.table_out.empty()) {
    const std::size_t n = grid_count(o.tmax, o.dt, "zeno");
    std::vector<double> taus;
    for (std::size_t k = 1; k <= n; ++k) taus.push_back(static_cast<double>(k) * o.dt);
    io::CsvTable table;
    table.header = {"tau[1/hop]", "gamma_eff[hop]", "gamma0[hop]", "regime"};
    for (const RateRow& r : rate_table(model, taus)) table.rows.push_back({r.tau, r.gamma_eff, r.gamma0, regime_code(r.regime)});
    write_table(o.table_out, common.format, table);
  }
}

void run_bpm(const BpmOptions& o, const CommonOptions& common) {
  const bpm::WaveguideArraySpec spec = resolve_spec(o.waveguide, o.zmax);
  bpm::PropagationOptions opts;
  opts.z_max_mm = o.zmax;
  opts.grid = o.waveguide.grid;
  opts.output_step_mm = o.output_step;
  opts.record_map = !o.map_out.empty();
  opts.map_dz_mm = o.map_dz;
  opts.map_dx_um = o.map_dx;
  const bpm::PropagationResult r = bpm::propagate(spec, opts);
  const double kappa = r.coupling.kappa_per_mm;

  io::CsvTable table;
  table.header = {"z[mm]", "t[1/hop]", "Re_c1", "Im_c1", "abs_c1", "power", "gamma_eff[hop]"};
  for (std::size_t k = 0; k < r.z_mm.size(); ++k) {
    const double t = kappa * r.z_mm[k];
    table.rows.push_back({r.z_mm[k], t, r.c1[k].real(), r.c1[k].imag(), std::abs(r.c1[k]), r.power[k],
                          effective_rate_from_amplitude(r.c1[k], t)});
  }
  write_table(common.out, common.format, table,
              {{"delta", r.coupling.delta}, {"kappa_per_mm", kappa}, {"mode_energy", r.mode.energy}});
  std::cerr << "# delta " << num(r.coupling.delta) << " kappa_per_mm " << num(kappa) << '\n';

  if (r.map) write_matrix_file(o.map_out, "z[mm]\\x[um]", r.map->x_um, r.map->z_mm, r.map->values);
}

void run_modes(const ModesOptions& o, const CommonOptions& common) {
  bpm::WaveguideArraySpec spec = resolve_spec(o.waveguide, 1.0);
  Summary summary;
  if (o.calibrate) {
    spec.channel_width = bpm::calibrate_channel_width(spec, *o.calibrate, 2.0, 4.5, o.waveguide.grid.dx);
    summary.emplace_back("calibration_target_delta", *o.calibrate);
  }
  const bpm::GuidedMode mode = bpm::solve_guided_mode(spec, o.waveguide.grid.dx);
  const bpm::HoppingRatio h = bpm::hopping_ratio(spec, mode);
  summary.emplace_back("channel_width_um", spec.channel_width);
  summary.emplace_back("profile_exponent", static_cast<double>(spec.profile_exponent));
  summary.emplace_back("mode_energy", mode.energy);
  summary.emplace_back("bound_modes", static_cast<double>(mode.bound_modes));
  summary.emplace_back("first_gap_um", spec.first_gap);
  summary.emplace_back("spacing_um", spec.spacing);
  summary.emplace_back("delta", h.delta);
  summary.emplace_back("kappa_per_mm", h.kappa_per_mm);
  if (mode.multimode()) std::cerr << "warning: channel supports " << mode.bound_modes << " bound modes\n";
  write_summary(common.out, common.format, summary);

  if (!o.profile_out.empty()) {
    io::CsvTable table;
    table.header = {"x[um]", "phi", "n"};
    for (std::size_t i = 0; i < mode.x.size(); ++i) {
      const double n = spec.n_substrate + spec.delta_n * bpm::channel_shape(mode.x[i], spec.channel_width, spec.profile_exponent);
      table.rows.push_back({mode.x[i], mode.phi[i], n});
    }
    write_table(o.profile_out, common.format, table);
  }
}

}  // namespace tbdecay::cli
