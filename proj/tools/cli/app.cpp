#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "tbdecay/errors.hpp"

namespace tbdecay::cli {

namespace {

// Flat `key = value` config files name flags of the active subcommand, so
// top-level keys are re-parented onto it.
class FlatConfig : public CLI::ConfigTOML {
 public:
  explicit FlatConfig(std::string section) : section_(std::move(section)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    if (section_.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {section_};
    }
    return items;
  }

 private:
  std::string section_;
};

enum ExitCode { kOk = 0, kUsage = 2, kValidation = 3, kNumerical = 4, kIo = 5 };

int report(ExitCode code, const char* kind, const std::string& message) {
  nlohmann::ordered_json record;
  record["error"] = kind;
  record["exit_code"] = static_cast<int>(code);
  record["message"] = message;
  std::cerr << record.dump() << '\n';
  return code;
}

void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--out", common.out, "Output file (stdout when omitted)");
  sub->add_option("--format", common.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv}, {"json", Format::Json}}));
}

void add_waveguide(CLI::App* sub, WaveguideOptions& w) {
  auto& s = w.spec;
  auto& g = w.grid;
  sub->add_option("--n-substrate", s.n_substrate, "Substrate index n_s");
  sub->add_option("--wavelength", s.wavelength, "Free-space wavelength [um]");
  sub->add_option("--delta-n", s.delta_n, "Channel index contrast");
  sub->add_option("--channel-width", s.channel_width, "Channel half-width w [um]");
  sub->add_option("--profile-exponent", s.profile_exponent, "Super-Gaussian exponent p");
  sub->add_option("--spacing", s.spacing, "Bulk period a [um]");
  sub->add_option("--first-gap", s.first_gap, "Boundary spacing a0 [um]");
  sub->add_option("--n-guides", s.n_guides, "Number of guides");
  sub->add_option("--segment", w.segment_mm, "Segment length [mm]; enables the segmented Zeno geometry");
  sub->add_option("--dx", g.dx, "Transverse step [um]");
  sub->add_option("--dz", g.dz, "Propagation step [um]");
  sub->add_option("--margin", g.margin, "Clear margin beyond outer guides [um]");
  sub->add_option("--absorber-width", g.absorber_width, "Absorbing ramp width [um]");
  sub->add_option("--absorber-strength", g.absorber_strength, "Absorbing ramp peak (index units)");
}

std::string active_subcommand(const std::vector<std::string>& args, const std::vector<std::string>& names) {
  for (const auto& a : args) {
    for (const auto& n : names) {
      if (a == n) return n;
    }
  }
  return {};
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Edge-state tunneling decay in semi-infinite tight-binding lattices and waveguide arrays", "tbdecay"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key = value TOML file; flags override file values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.option_defaults()->always_capture_default();

  CommonOptions common;
  ExactOptions exact;
  EvolveRunOptions evolve_opts;
  ZenoOptions zeno;
  BpmOptions bpm_opts;
  ModesOptions modes;
  FigureOptions figure;
  double tau_value = 0.0;

  auto* exact_cmd = app.add_subcommand("exact", "Exact amplitude c1(t) by quadrature");
  exact_cmd->add_option("--delta", exact.delta, "Boundary hopping 0 < delta <= 1");
  exact_cmd->add_option("--tmax", exact.tmax, "Final time");
  exact_cmd->add_option("--dt", exact.dt, "Output spacing");
  add_common(exact_cmd, common);

  auto* evolve_cmd = app.add_subcommand("evolve", "RK4 integration of the truncated lattice");
  evolve_cmd->add_option("--delta", evolve_opts.delta, "Boundary hopping 0 <= delta <= 1");
  evolve_cmd->add_option("--tmax", evolve_opts.tmax, "Final time");
  evolve_cmd->add_option("--dt", evolve_opts.dt, "Integrator step (<= 0.01)");
  evolve_cmd->add_option("--sample", evolve_opts.sample, "Output spacing");
  evolve_cmd->add_option("--sites", evolve_opts.sites, "Lattice size (0 = minimum admissible)");
  evolve_cmd->add_option("--map-out", evolve_opts.map_out, "Write |c_n(t)| matrix here");
  evolve_cmd->add_option("--map-sites", evolve_opts.map_sites, "Sites in the |c_n(t)| matrix");
  add_common(evolve_cmd, common);

  auto* zeno_cmd = app.add_subcommand("zeno", "Zeno threshold, anti-Zeno peak and measurement protocol");
  zeno_cmd->add_option("--delta", zeno.delta, "Boundary hopping 0 < delta <= 1");
  auto* tau_opt = zeno_cmd->add_option("--tau", tau_value, "Measurement interval to classify");
  zeno_cmd->add_option("--count", zeno.count, "Number of measurements");
  zeno_cmd->add_option("--tmax", zeno.tmax, "Rate table range");
  zeno_cmd->add_option("--dt", zeno.dt, "Rate table spacing");
  zeno_cmd->add_option("--table", zeno.table_out, "Write (tau, gamma_eff, gamma0, regime) table here");
  add_common(zeno_cmd, common);

  auto* bpm_cmd = app.add_subcommand("bpm", "Beam propagation in a waveguide array");
  add_waveguide(bpm_cmd, bpm_opts.waveguide);
  bpm_cmd->add_option("--zmax", bpm_opts.zmax, "Array length [mm]");
  bpm_cmd->add_option("--output-step", bpm_opts.output_step, "c1(z) sampling [mm]");
  bpm_cmd->add_option("--map-out", bpm_opts.map_out, "Write |psi(x,z)|^2 matrix here");
  bpm_cmd->add_option("--map-dz", bpm_opts.map_dz, "Map z spacing [mm]");
  bpm_cmd->add_option("--map-dx", bpm_opts.map_dx, "Map x spacing [um]");
  add_common(bpm_cmd, common);

  auto* modes_cmd = app.add_subcommand("modes", "Guided mode, hopping ratio and channel calibration");
  add_waveguide(modes_cmd, modes.waveguide);
  modes_cmd->add_option("--calibrate", modes.calibrate, "Fit the channel width to this delta at the given first gap");
  modes_cmd->add_option("--profile-out", modes.profile_out, "Write the mode profile here");
  add_common(modes_cmd, common);

  auto* figure_cmd = app.add_subcommand("figure", "Emit plot-ready data for a figure");
  figure_cmd->add_option("kind", figure.kind, "fig2 | fig3 | fig4")->required()->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  figure_cmd->add_option("--out", figure.out_dir, "Output directory");
  figure_cmd->add_option("--tmax", figure.tmax, "Time range for fig2");
  figure_cmd->add_option("--map-sites", figure.map_sites, "Sites in the |c_n(t)| maps");
  figure_cmd->add_option("--dx", figure.dx, "BPM transverse step [um]");
  figure_cmd->add_option("--dz", figure.dz, "BPM propagation step [um]");
  figure_cmd->add_option("--format", common.format, "Output format for tables")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv}, {"json", Format::Json}}));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  app.config_formatter(std::make_shared<FlatConfig>(
      active_subcommand(args, {"exact", "evolve", "zeno", "bpm", "modes", "figure"})));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(kUsage, "usage", e.what());
  }
  if (!tau_opt->empty()) zeno.tau = tau_value;

  try {
    if (*exact_cmd) run_exact(exact, common);
    else if (*evolve_cmd) run_evolve(evolve_opts, common);
    else if (*zeno_cmd) run_zeno(zeno, common);
    else if (*bpm_cmd) run_bpm(bpm_opts, common);
    else if (*modes_cmd) run_modes(modes, common);
    else if (*figure_cmd) {
      for (const auto& f : emit_figure_data(figure, common)) std::cout << f << '\n';
    }
  } catch (const DomainError& e) {
    return report(kValidation, "validation", e.what());
  } catch (const ConfigurationError& e) {
    return report(kValidation, "validation", e.what());
  } catch (const NotFoundError& e) {
    return report(kNumerical, "numerical", e.what());
  } catch (const NumericalError& e) {
    return report(kNumerical, "numerical", e.what());
  } catch (const IoError& e) {
    return report(kIo, "io", e.what());
  } catch (const std::ios_base::failure& e) {
    return report(kIo, "io", e.what());
  }
  return kOk;
}

}  // namespace tbdecay::cli
