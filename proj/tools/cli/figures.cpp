#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "commands.hpp"
#include "tbdecay/analytic.hpp"
#include "tbdecay/bpm/propagator.hpp"
#include "tbdecay/errors.hpp"
#include "tbdecay/evolve.hpp"

namespace tbdecay::cli {

namespace {

namespace fs = std::filesystem;

std::string table_name(const std::string& stem, Format format) {
  return stem + (format == Format::Json ? ".json" : ".csv");
}

std::vector<std::string> fig2(const FigureOptions& o, const CommonOptions& common, const fs::path& dir) {
  const double tmax = o.tmax.value_or(100.0);
  if (!(tmax > 0.0)) throw ConfigurationError("figure fig2: --tmax must be > 0");
  constexpr double kCurveStep = 0.05;
  constexpr double kMapStep = 0.1;
  std::vector<std::string> files;

  for (double delta : {0.3, 0.5, 0.9}) {
    const CouplingModel model(delta);
    const std::string tag = "delta" + num(delta);

    io::CsvTable curve;
    curve.header = {"t[1/hop]", "gamma_eff[hop]", "gamma0[hop]", "abs_c1"};
    const auto n = static_cast<std::size_t>(std::round(tmax / kCurveStep));
    for (std::size_t k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) * kCurveStep;
      const Complex c1 = exact_amplitude(model, t);
      curve.rows.push_back({t, effective_rate_from_amplitude(c1, t), model.gamma0(), std::abs(c1)});
    }
    const fs::path curve_path = dir / table_name("fig2_gamma_" + tag, common.format);
    write_table(curve_path.string(), common.format, curve, {{"delta", delta}, {"gamma0", model.gamma0()}});
    files.push_back(curve_path.string());

    EvolveOptions eo;
    eo.sample_stride = static_cast<std::size_t>(std::round(kMapStep / eo.dt));
    const AmplitudeTrajectory traj = evolve(model, tmax, eo);
    const std::size_t sites = std::min(o.map_sites, traj.n_sites());
    std::vector<double> columns, rows, values;
    for (std::size_t s = 1; s <= sites; ++s) columns.push_back(static_cast<double>(s));
    for (std::size_t k = 0; k < traj.size(); ++k) {
      rows.push_back(traj.times()[k]);
      for (std::size_t s = 1; s <= sites; ++s) values.push_back(std::abs(traj.amplitude(k, s)));
    }
    const fs::path map_path = dir / ("fig2_map_" + tag + ".csv");
    write_matrix_file(map_path, "t[1/hop]\\site", columns, rows, values);
    files.push_back(map_path.string());
  }
  return files;
}

bpm::PropagationOptions bpm_options(const FigureOptions& o, double length_mm) {
  bpm::PropagationOptions opts;
  opts.z_max_mm = length_mm;
  opts.grid.dx = o.dx;
  opts.grid.dz = o.dz;
  opts.output_step_mm = 0.1;
  opts.record_map = true;
  opts.map_dz_mm = 0.25;
  opts.map_dx_um = 1.0;
  return opts;
}

std::vector<std::string> fig3(const FigureOptions& o, const CommonOptions& common, const fs::path& dir) {
  constexpr double kLength = 50.0;
  std::vector<std::string> files;
  Summary summary;
  const std::pair<const char*, double> panels[] = {{"fig3a", 16.0}, {"fig3b", 12.5}};
  for (const auto& [name, gap] : panels) {
    bpm::WaveguideArraySpec spec;
    spec.first_gap = gap;
    const bpm::PropagationResult r = bpm::propagate(spec, bpm_options(o, kLength));
    const double kappa = r.coupling.kappa_per_mm;
    const CouplingModel model(std::min(r.coupling.delta, 1.0));

    io::CsvTable table;
    table.header = {"z[mm]", "t[1/hop]", "abs_c1", "gamma_eff[hop]", "abs_c1_tb", "gamma_eff_tb[hop]"};
    for (std::size_t k = 0; k < r.z_mm.size(); ++k) {
      const double t = kappa * r.z_mm[k];
      const Complex tb = exact_amplitude(model, t);
      table.rows.push_back({r.z_mm[k], t, std::abs(r.c1[k]), effective_rate_from_amplitude(r.c1[k], t), std::abs(tb),
                            effective_rate_from_amplitude(tb, t)});
    }
    const fs::path c1_path = dir / table_name(std::string(name) + "_c1", common.format);
    write_table(c1_path.string(), common.format, table, {{"delta", r.coupling.delta}, {"kappa_per_mm", kappa}});
    files.push_back(c1_path.string());

    const fs::path map_path = dir / (std::string(name) + "_map.csv");
    write_matrix_file(map_path, "z[mm]\\x[um]", r.map->x_um, r.map->z_mm, r.map->values);
    files.push_back(map_path.string());

    summary.emplace_back(std::string(name) + "_first_gap_um", gap);
    summary.emplace_back(std::string(name) + "_delta", r.coupling.delta);
    summary.emplace_back(std::string(name) + "_kappa_per_mm", kappa);
  }
  const fs::path summary_path = dir / table_name("fig3_summary", common.format);
  write_summary(summary_path.string(), common.format, summary);
  files.push_back(summary_path.string());
  return files;
}

std::vector<std::string> fig4(const FigureOptions& o, const CommonOptions& common, const fs::path& dir) {
  constexpr double kLength = 20.0;
  constexpr double kSegment = 4.0;
  bpm::WaveguideArraySpec plain;
  plain.first_gap = 16.0;
  bpm::WaveguideArraySpec segmented = plain;
  segmented.geometry = bpm::ZenoSegmented{kSegment, kLength};

  const bpm::PropagationResult rs = bpm::propagate(segmented, bpm_options(o, kLength));
  auto plain_opts = bpm_options(o, kLength);
  plain_opts.record_map = false;
  const bpm::PropagationResult rp = bpm::propagate(plain, plain_opts);

  io::CsvTable table;
  table.header = {"z[mm]", "abs_c1_segmented", "abs_c1_plain"};
  for (std::size_t k = 0; k < rs.z_mm.size() && k < rp.z_mm.size(); ++k) {
    table.rows.push_back({rs.z_mm[k], std::abs(rs.c1[k]), std::abs(rp.c1[k])});
  }
  std::vector<std::string> files;
  const fs::path c1_path = dir / table_name("fig4_c1", common.format);
  write_table(c1_path.string(), common.format, table);
  files.push_back(c1_path.string());

  const fs::path map_path = dir / "fig4_map.csv";
  write_matrix_file(map_path, "z[mm]\\x[um]", rs.map->x_um, rs.map->z_mm, rs.map->values);
  files.push_back(map_path.string());

  const Summary summary{{"segment_length_mm", kSegment},
                        {"length_mm", kLength},
                        {"delta", rs.coupling.delta},
                        {"kappa_per_mm", rs.coupling.kappa_per_mm},
                        {"abs_c1_segmented_end", std::abs(rs.c1.back())},
                        {"abs_c1_plain_end", std::abs(rp.c1.back())}};
  const fs::path summary_path = dir / table_name("fig4_summary", common.format);
  write_summary(summary_path.string(), common.format, summary);
  files.push_back(summary_path.string());
  return files;
}

}  // namespace

std::vector<std::string> emit_figure_data(const FigureOptions& o, const CommonOptions& common) {
  const fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  if (o.kind == "fig2") return fig2(o, common, dir);
  if (o.kind == "fig3") return fig3(o, common, dir);
  if (o.kind == "fig4") return fig4(o, common, dir);
  throw ConfigurationError("figure: unknown kind '" + o.kind + "' (expected fig2, fig3 or fig4)");
}

}  // namespace tbdecay::cli
