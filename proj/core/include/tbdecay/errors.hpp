#pragma once

#include <stdexcept>
#include <string>

namespace tbdecay {

// Parameter outside the mathematical domain of an operation (e.g. Δ ≥ 1 for
// the Gamow rate).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A run configuration that cannot produce a trustworthy result (lattice too
// short for the requested time, grid window too small, bad step sizes).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A search (root, peak) that found nothing in its window.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: no bound mode, degenerate overlap, non-convergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tbdecay
