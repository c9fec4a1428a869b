#include "doctest.h"
#include "qfric/constants.hpp"
#include "qfric/material.hpp"

#include <cmath>

using namespace qfric;

TEST_CASE("Drude reflection equals (eps - 1)/(eps + 1)") {
  const Material au = Material::drude_ev(9.0, 0.035);
  for (double w : {1e12, 3e14, 1.97e15, 6.8e15, 2e16}) {
    const auto eps = au.permittivity(w);
    const auto r = (eps - 1.0) / (eps + 1.0);
    CHECK(std::abs(au.reflection_p(w) - r) < 1e-12 * std::abs(r));
  }
}

TEST_CASE("crossing symmetry r(-w) = conj r(w)") {
  const Material au = Material::drude_ev(9.0, 0.035);
  const Material na = Material::ohmic(8e-7);
  for (double w : {1e10, 1e14, 5e15, 1e17}) {
    CHECK(au.reflection_p(-w) == std::conj(au.reflection_p(w)));
    CHECK(na.reflection_p(-w) == std::conj(na.reflection_p(w)));
    CHECK(au.permittivity(-w) == std::conj(au.permittivity(w)));
  }
  CHECK(au.reflection_p(0.0) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("passive surface: Im r has the sign of omega") {
  const Material au = Material::drude_ev(9.0, 0.035);
  for (double w : {1e11, 1e14, 6.8e15, 1e17}) {
    CHECK(au.reflection_p(w).imag() > 0.0);
    CHECK(au.reflection_p(-w).imag() < 0.0);
  }
}

TEST_CASE("low-frequency slope matches the resistivity") {
  const Material au = Material::drude_ev(9.0, 0.035);
  const double rho = au.ohmic_slope();
  CHECK(rho == doctest::Approx(3.21e-8).epsilon(0.01));
  const double w = 1e9;
  CHECK(au.reflection_p(w).imag() == doctest::Approx(2 * constants::eps0 * rho * w).epsilon(1e-6));

  const Material na = Material::ohmic(8e-7, 1.0);
  CHECK(na.reflection_p(1e12) == std::complex<double>(1.0, 2 * constants::eps0 * 8e-7 * 1e12));
  CHECK_FALSE(na.plasmon_frequency().has_value());
  CHECK_THROWS_AS(na.permittivity(1e12), DomainError);
}

TEST_CASE("plasmon frequency and invalid inputs") {
  const Material au = Material::drude_ev(9.0, 0.035);
  CHECK(*au.plasmon_frequency() == doctest::Approx(9.0 * constants::ev_to_rad_per_s / std::sqrt(2.0)));
  CHECK_THROWS_AS(au.permittivity(0.0), DomainError);
  CHECK_THROWS_AS(Material::drude(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Material::ohmic(0.0), std::invalid_argument);
}
