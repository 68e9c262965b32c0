#include "tbdecay/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tbdecay/errors.hpp"

namespace tbdecay::special {

namespace {
constexpr double kRescaleThreshold = 1e250;
}

int miller_start_order(int max_order, double x) {
  const int top = std::max(max_order, static_cast<int>(std::ceil(x)));
  int start = top + 10 + static_cast<int>(std::ceil(std::sqrt(40.0 * static_cast<double>(top))));
  if (start % 2 != 0) ++start;  // keeps the normalization sum aligned on even orders
  return start;
}

std::vector<double> bessel_j_sequence(int max_order, double x) {
  if (max_order < 0) throw DomainError("bessel_j_sequence: negative max_order");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j_sequence: argument must be finite and >= 0");

  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }

  const int start = miller_start_order(max_order, x);
  const double two_over_x = 2.0 / x;

  // Trial values: J_{start+1} = 0, J_start = tiny.
  double above = 0.0;
  double current = 1e-300;
  double norm = 0.0;  // J_0 + 2 Σ J_{2k}, accumulated in the same scale

  for (int k = start; k >= 0; --k) {
    if (k <= max_order) out[static_cast<std::size_t>(k)] = current;
    if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * current;
    if (k == 0) break;

    const double below = static_cast<double>(k) * two_over_x * current - above;
    above = current;
    current = below;

    if (std::abs(current) > kRescaleThreshold) {
      constexpr double s = 1.0 / kRescaleThreshold;
      current *= s;
      above *= s;
      norm *= s;
      for (int j = k; j <= max_order; ++j) out[static_cast<std::size_t>(j)] *= s;
    }
  }

  const double inv = 1.0 / norm;
  for (double& v : out) v *= inv;
  return out;
}

double bessel_j(int order, double x) {
  // J_{-n}(x) = (-1)^n J_n(x),  J_n(-x) = (-1)^n J_n(x)
  double sign = 1.0;
  if (order < 0) {
    order = -order;
    if (order % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (order % 2 != 0) sign = -sign;
  }
  return sign * bessel_j_sequence(order, x)[static_cast<std::size_t>(order)];
}

}  // namespace tbdecay::special
