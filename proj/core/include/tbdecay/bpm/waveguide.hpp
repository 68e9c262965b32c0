#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

// Transverse geometry of a planar array of evanescently coupled channel
// waveguides.  Lengths along x are in µm, propagation lengths in mm.
//
// Guide 1 sits at x = 0.  In the semi-infinite layout guide 2 follows at the
// boundary gap a₀ and the remaining guides at the bulk period a.  In the
// segmented layout guide 1 runs straight through while finite-length lateral
// arrays alternate between its right and left side.
namespace tbdecay::bpm {

struct SemiInfinite {};

struct ZenoSegmented {
  double segment_length_mm = 4.0;
  double total_length_mm = 20.0;
};

using Geometry = std::variant<SemiInfinite, ZenoSegmented>;

// Channel width calibrated so that a₀ = 16 µm, a = 12 µm gives Δ ≈ 0.28
// with a p = 6 super-Gaussian (see calibrate_channel_width).
inline constexpr double kCalibratedChannelWidth = 3.8263;

struct WaveguideArraySpec {
  double n_substrate = 2.138;
  double wavelength = 1.55;  // µm
  double delta_n = 2.4e-3;
  double channel_width = kCalibratedChannelWidth;  // µm, half-width w
  int profile_exponent = 6;
  double spacing = 12.0;    // a, µm
  double first_gap = 16.0;  // a₀, µm
  std::size_t n_guides = 60;
  Geometry geometry = SemiInfinite{};

  // Throws ConfigurationError on a physically invalid spec.
  void validate() const;

  // ħ of the optical mapping, λ/2π in µm.
  double reduced_wavelength() const;
};

struct GridSpec {
  double dx = 0.05;               // µm
  double dz = 0.5;                // µm
  double margin = 30.0;           // clear substrate beyond the outermost guide centers, µm
  double absorber_width = 30.0;   // µm, outside the margin
  double absorber_strength = 2e-2;  // peak imaginary index of the absorbing ramp

  void validate() const;
};

// Channel shape exp(−|(x − x_j)/w|^p) with unit peak.
double channel_shape(double offset, double width, int exponent);

// Centres of the guides of the semi-infinite layout, guide 1 first.
std::vector<double> semi_infinite_centers(const WaveguideArraySpec& spec);

struct SampledProfile {
  std::vector<double> x;      // µm, uniform
  std::vector<double> index;  // n(x)
  std::vector<double> centers;

  double dx() const { return x.size() > 1 ? x[1] - x[0] : 0.0; }
};

// Uniform grid covering [lo − margin − absorber, hi + margin + absorber], with
// a sample exactly at x = 0.
std::vector<double> make_grid(double lo, double hi, const GridSpec& grid);

// n(x) = n_s + Δn Σ_j shape(x − x_j) for the given centres, sampled on x.
std::vector<double> sample_index(const WaveguideArraySpec& spec, std::span<const double> x,
                                 std::span<const double> centers);

// Semi-infinite array profile (the geometry field is ignored).
SampledProfile build_index_profile(const WaveguideArraySpec& spec, const GridSpec& grid = {});

// Piecewise-constant-in-z index map.
struct IndexSegment {
  double z_begin_mm;
  double z_end_mm;
  std::vector<double> index;
  std::vector<double> centers;
};

struct IndexMap {
  std::vector<double> x;
  std::vector<IndexSegment> segments;

  const IndexSegment& at(double z_mm) const;
  double length_mm() const { return segments.empty() ? 0.0 : segments.back().z_end_mm; }
};

// Segmented array: guide 1 continuous, lateral array (n_guides − 1 guides, first
// at gap a₀) on the right in even segments and on the left in odd segments.
IndexMap build_zeno_array(const WaveguideArraySpec& spec, double segment_length_mm, double total_length_mm,
                          const GridSpec& grid = {});

// Index map for whatever geometry the spec names, over total_length_mm.
IndexMap build_index_map(const WaveguideArraySpec& spec, double total_length_mm, const GridSpec& grid = {});

}  // namespace tbdecay::bpm
