#include <cmath>
#include <limits>

#include "doctest.h"
#include "tbdecay/coupling_model.hpp"
#include "tbdecay/errors.hpp"

using tbdecay::CouplingModel;
using tbdecay::gamow_rate;

TEST_CASE("derived constants satisfy their invariants") {
  for (double d : {1e-4, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const CouplingModel m(d);
    CHECK(std::abs(m.alpha() * m.alpha() + d * d - 1.0) < 1e-14);
    CHECK(std::abs(m.gamma0() - 2.0 * d * d / m.alpha()) < 1e-14 * (1.0 + m.gamma0()));
    CHECK(m.sqrt_z() >= 1.0);
    CHECK_FALSE(m.is_strong_coupling());
  }
  CHECK(CouplingModel(1e-6).sqrt_z() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("strong coupling flags the divergent rate") {
  const CouplingModel m(1.0);
  CHECK(m.is_strong_coupling());
  CHECK(m.alpha() == 0.0);
  CHECK(m.gamma0() == std::numeric_limits<double>::infinity());
  CHECK(m.sqrt_z() == std::numeric_limits<double>::infinity());
}

TEST_CASE("coupling outside (0, 1] is rejected") {
  CHECK_THROWS_AS(CouplingModel(0.0), tbdecay::DomainError);
  CHECK_THROWS_AS(CouplingModel(-0.2), tbdecay::DomainError);
  CHECK_THROWS_AS(CouplingModel(1.0000001), tbdecay::DomainError);
  CHECK_THROWS_AS(CouplingModel(std::nan("")), tbdecay::DomainError);
}

TEST_CASE("gamow_rate") {
  SUBCASE("weak-coupling limit gamma0 / (2 delta^2) -> 1") {
    CHECK(gamow_rate(1e-4) / (2e-8) == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("delta = 0.3") { CHECK(gamow_rate(0.3) == doctest::Approx(0.18869127060994528).epsilon(1e-14)); }
  SUBCASE("delta = 1/sqrt 2 gives sqrt 2") {
    CHECK(gamow_rate(1.0 / std::sqrt(2.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("strictly increasing") {
    double prev = 0.0;
    for (double d = 0.01; d < 0.999; d += 0.01) {
      const double g = gamow_rate(d);
      CHECK(g > prev);
      prev = g;
    }
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(gamow_rate(0.0), tbdecay::DomainError);
    CHECK_THROWS_AS(gamow_rate(1.0), tbdecay::DomainError);
    CHECK_THROWS_AS(gamow_rate(1.5), tbdecay::DomainError);
  }
}
