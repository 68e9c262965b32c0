#pragma once

#include <optional>
#include <string>
#include <vector>

#include "output.hpp"
#include "tbdecay/bpm/waveguide.hpp"

namespace tbdecay::cli {

struct CommonOptions {
  std::string out;
  Format format = Format::Csv;
};

struct ExactOptions {
  double delta = 0.5;
  double tmax = 30.0;
  double dt = 0.1;
};

struct EvolveRunOptions {
  double delta = 0.5;
  double tmax = 30.0;
  double dt = 0.005;   // integrator step
  double sample = 0.1; // output spacing
  std::size_t sites = 0;
  std::string map_out;
  std::size_t map_sites = 40;
};

struct ZenoOptions {
  double delta = 0.3;
  double tmax = 200.0;  // table range
  double dt = 0.1;      // table spacing
  std::optional<double> tau;
  std::size_t count = 1;
  std::string table_out;
};

struct WaveguideOptions {
  bpm::WaveguideArraySpec spec;
  bpm::GridSpec grid;
  std::optional<double> segment_mm;  // enables the segmented geometry
};

struct BpmOptions {
  WaveguideOptions waveguide;
  double zmax = 50.0;
  double output_step = 0.1;
  std::string map_out;
  double map_dz = 0.25;
  double map_dx = 1.0;
};

struct ModesOptions {
  WaveguideOptions waveguide;
  std::optional<double> calibrate;
  std::string profile_out;
};

struct FigureOptions {
  std::string kind;  // fig2 | fig3 | fig4
  std::string out_dir = "figures";
  std::optional<double> tmax;
  std::size_t map_sites = 40;
  double dx = 0.05;
  double dz = 0.5;
};

void run_exact(const ExactOptions& o, const CommonOptions& common);
void run_evolve(const EvolveRunOptions& o, const CommonOptions& common);
void run_zeno(const ZenoOptions& o, const CommonOptions& common);
void run_bpm(const BpmOptions& o, const CommonOptions& common);
void run_modes(const ModesOptions& o, const CommonOptions& common);
// Emits the plot-ready files of one figure into out_dir; returns their paths.
std::vector<std::string> emit_figure_data(const FigureOptions& o, const CommonOptions& common);

// Full command line entry: returns the process exit status.
//   0 success, 2 usage, 3 validation, 4 numerical, 5 I/O
int run(const std::vector<std::string>& args);

}  // namespace tbdecay::cli
