#include "tbdecay/bpm/waveguide.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tbdecay/errors.hpp"

namespace tbdecay::bpm {

namespace {
constexpr double kMinimumMargin = 30.0;
}

void WaveguideArraySpec::validate() const {
  if (!(n_substrate > 1.0)) throw ConfigurationError("waveguide spec: n_substrate must be > 1");
  if (!(wavelength > 0.0)) throw ConfigurationError("waveguide spec: wavelength must be > 0");
  if (!(delta_n > 0.0)) throw ConfigurationError("waveguide spec: delta_n must be > 0");
  if (!(channel_width > 0.0)) throw ConfigurationError("waveguide spec: channel_width must be > 0");
  if (profile_exponent < 2 || profile_exponent % 2 != 0) {
    throw ConfigurationError("waveguide spec: profile_exponent must be an even integer >= 2");
  }
  if (!(spacing > 2.0 * channel_width)) {
    throw ConfigurationError("waveguide spec: spacing must exceed twice the channel width");
  }
  if (!(first_gap >= spacing)) throw ConfigurationError("waveguide spec: first_gap must be >= spacing");
  if (n_guides < 1) throw ConfigurationError("waveguide spec: n_guides must be >= 1");
  if (const auto* seg = std::get_if<ZenoSegmented>(&geometry)) {
    if (!(seg->segment_length_mm > 0.0)) throw ConfigurationError("waveguide spec: segment length must be > 0");
    const double ratio = seg->total_length_mm / seg->segment_length_mm;
    if (!(ratio >= 1.0) || std::abs(ratio - std::round(ratio)) > 1e-9) {
      throw ConfigurationError("waveguide spec: total length must be a positive multiple of the segment length");
    }
  }
}

double WaveguideArraySpec::reduced_wavelength() const { return wavelength / (2.0 * std::numbers::pi); }

void GridSpec::validate() const {
  if (!(dx > 0.0 && dx <= 0.5)) throw ConfigurationError("grid: dx must satisfy 0 < dx <= 0.5 um");
  if (!(dz > 0.0 && dz <= 10.0)) throw ConfigurationError("grid: dz must satisfy 0 < dz <= 10 um");
  if (!(margin >= kMinimumMargin)) {
    throw ConfigurationError("grid: margin must be >= 30 um beyond the outermost guides");
  }
  if (!(absorber_width >= 0.0)) throw ConfigurationError("grid: absorber_width must be >= 0");
  if (!(absorber_strength >= 0.0)) throw ConfigurationError("grid: absorber_strength must be >= 0");
}

double channel_shape(double offset, double width, int exponent) {
  return std::exp(-std::pow(std::abs(offset / width), exponent));
}

std::vector<double> semi_infinite_centers(const WaveguideArraySpec& spec) {
  std::vector<double> c;
  c.reserve(spec.n_guides);
  c.push_back(0.0);
  for (std::size_t j = 1; j < spec.n_guides; ++j) {
    c.push_back(spec.first_gap + spec.spacing * static_cast<double>(j - 1));
  }
  return c;
}

std::vector<double> make_grid(double lo, double hi, const GridSpec& grid) {
  const double pad = grid.margin + grid.absorber_width;
  const auto k_lo = static_cast<long>(std::floor((lo - pad) / grid.dx));
  const auto k_hi = static_cast<long>(std::ceil((hi + pad) / grid.dx));
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (long k = k_lo; k <= k_hi; ++k) x.push_back(static_cast<double>(k) * grid.dx);
  return x;
}

std::vector<double> sample_index(const WaveguideArraySpec& spec, std::span<const double> x,
                                 std::span<const double> centers) {
  std::vector<double> n(x.size(), spec.n_substrate);
  // The super-Gaussian is below 1e-300 beyond 3w for p >= 6; 6w is generous for p = 2.
  const double reach = 6.0 * spec.channel_width;
  const double dx = x.size() > 1 ? x[1] - x[0] : 1.0;
  for (double c : centers) {
    const auto first = static_cast<std::ptrdiff_t>(std::max(0.0, std::floor((c - reach - x.front()) / dx)));
    const auto last = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(x.size()) - 1,
                                               static_cast<std::ptrdiff_t>(std::ceil((c + reach - x.front()) / dx)));
    for (std::ptrdiff_t k = first; k <= last; ++k) {
      n[static_cast<std::size_t>(k)] += spec.delta_n * channel_shape(x[static_cast<std::size_t>(k)] - c,
                                                                     spec.channel_width, spec.profile_exponent);
    }
  }
  return n;
}

SampledProfile build_index_profile(const WaveguideArraySpec& spec, const GridSpec& grid) {
  spec.validate();
  grid.validate();
  SampledProfile p;
  p.centers = semi_infinite_centers(spec);
  p.x = make_grid(p.centers.front(), p.centers.back(), grid);
  if (p.x.front() > p.centers.front() - grid.margin || p.x.back() < p.centers.back() + grid.margin) {
    throw ConfigurationError("build_index_profile: grid window does not cover all guides plus margins");
  }
  p.index = sample_index(spec, p.x, p.centers);
  return p;
}

const IndexSegment& IndexMap::at(double z_mm) const {
  for (const auto& s : segments) {
    if (z_mm < s.z_end_mm) return s;
  }
  return segments.back();
}

IndexMap build_zeno_array(const WaveguideArraySpec& spec, double segment_length_mm, double total_length_mm,
                          const GridSpec& grid) {
  WaveguideArraySpec checked = spec;
  checked.geometry = ZenoSegmented{segment_length_mm, total_length_mm};
  checked.validate();
  grid.validate();

  const auto semi = semi_infinite_centers(spec);
  const double extent = semi.back();
  IndexMap map;
  map.x = make_grid(-extent, extent, grid);

  std::vector<double> right = semi;
  std::vector<double> left;
  left.reserve(semi.size());
  for (double c : semi) left.push_back(-c);

  const auto count = static_cast<std::size_t>(std::llround(total_length_mm / segment_length_mm));
  for (std::size_t k = 0; k < count; ++k) {
    const auto& centers = (k % 2 == 0) ? right : left;
    map.segments.push_back({segment_length_mm * static_cast<double>(k), segment_length_mm * static_cast<double>(k + 1),
                            sample_index(spec, map.x, centers), centers});
  }
  map.segments.back().z_end_mm = total_length_mm;
  return map;
}

IndexMap build_index_map(const WaveguideArraySpec& spec, double total_length_mm, const GridSpec& grid) {
  if (const auto* seg = std::get_if<ZenoSegmented>(&spec.geometry)) {
    return build_zeno_array(spec, seg->segment_length_mm, total_length_mm, grid);
  }
  auto profile = build_index_profile(spec, grid);
  IndexMap map;
  map.x = std::move(profile.x);
  map.segments.push_back({0.0, total_length_mm, std::move(profile.index), std::move(profile.centers)});
  return map;
}

}  // namespace tbdecay::bpm
