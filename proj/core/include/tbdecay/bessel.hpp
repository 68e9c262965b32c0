#pragma once

#include <vector>

namespace tbdecay::special {

// J_0(x) .. J_{max_order}(x) for x >= 0 by Miller's downward recurrence,
// normalized with J_0 + 2 Σ_k J_{2k} = 1.  Relative accuracy ~1e-13 or better
// for integer orders and arguments up to a few thousand.
std::vector<double> bessel_j_sequence(int max_order, double x);

// Single integer order, any sign of order and argument.
double bessel_j(int order, double x);

// Order at which the downward recurrence is started for the given highest
// order and argument.
int miller_start_order(int max_order, double x);

}  // namespace tbdecay::special
