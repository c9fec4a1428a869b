#include "doctest.h"
#include "qfric/constants.hpp"
#include "qfric/observables.hpp"

#include <cmath>

using namespace qfric;
using constants::pi;

namespace {
Scenario li_na(double v) {
  return Scenario{AtomParams::from_boundary(24.33, 1.848, 7.02), Material::ohmic(8e-7, 1.0, "sodium"), 5e-9, v};
}
Scenario rb_au(double v) {
  return Scenario{AtomParams::from_boundary(47.28, 1.3, 86.9), Material::drude_ev(9.0, 0.035, "gold"), 5e-9, v};
}
}  // namespace

TEST_CASE("low-velocity coefficients by quadrature") {
  const LowVelocityCoefficients c = lowv_coefficients();
  CHECK(c.translational == doctest::Approx(-63 / (pi * pi * pi)).epsilon(1e-6));
  CHECK(c.rotational == doctest::Approx(45 / (pi * pi * pi)).epsilon(1e-6));
  CHECK(c.err_translational < 1e-6 * std::abs(c.translational));
}

TEST_CASE("closed-form forces scale as v^3 / za^10 and are odd in v") {
  const Scenario s = li_na(1e4);
  const ForcePair f = friction_asymptotic(s);
  CHECK(f.rotational / f.translational == doctest::Approx(-5.0 / 7.0));
  Scenario s2 = s;
  s2.v = 2e4;
  CHECK(friction_asymptotic(s2).translational / f.translational == doctest::Approx(8.0));
  s2 = s;
  s2.za = 1e-8;
  CHECK(friction_asymptotic(s2).translational / f.translational == doctest::Approx(std::pow(0.5, 10)));
  s2 = s;
  s2.v = -1e4;
  CHECK(friction_asymptotic(s2).translational == doctest::Approx(-f.translational));
  const double expected = -63 / (pi * pi * pi) * constants::hbar * s.atom.alpha0 * s.atom.alpha0 * 8e-7 * 8e-7 *
                          1e12 / std::pow(1e-8, 10);
  CHECK(f.translational == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("second-order quadrature agrees with the closed forms") {
  const Scenario s = li_na(1e4);
  const ForcePair q = friction_lowv(s);
  const ForcePair a = friction_asymptotic(s);
  CHECK(q.translational == doctest::Approx(a.translational).epsilon(1e-6));
  CHECK(q.rotational == doctest::Approx(a.rotational).epsilon(1e-6));
}

TEST_CASE("asymptotic observables") {
  const ObservableResult o = evaluate_asymptotic(rb_au(1e4));
  CHECK(o.provenance == Provenance::asymptotic);
  CHECK(o.F_t < 0.0);
  CHECK(o.F_r > 0.0);
  CHECK(o.F_total == doctest::Approx(o.F_t + o.F_r));
  CHECK(o.a == doctest::Approx(o.F_total / rb_au(1e4).atom.mass));
  CHECK(o.Omega < 0.0);
  CHECK(o.Omega == doctest::Approx(rotation_frequency_asymptotic(rb_au(1e4))));
  CHECK(o.L_vec[1] < 0.0);
  // near-field rotation frequency is bounded by v/za
  CHECK(std::abs(o.Omega) < 1e4 / 5e-9);
}

TEST_CASE("scenario validation") {
  Scenario s = rb_au(1e4);
  s.za = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = rb_au(std::nan(""));
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK(to_string(Provenance::full) == "full");
}

TEST_CASE("full pipeline on the Ohmic surface" * doctest::timeout(600)) {
  const Scenario s = li_na(1e4);
  const ForceResult f = friction_forces(s);
  const ForcePair a = friction_asymptotic(s);
  CHECK(f.converged);
  CHECK(f.translational == doctest::Approx(a.translational).epsilon(0.02));
  CHECK(f.rotational == doctest::Approx(a.rotational).epsilon(0.02));
  CHECK(std::abs(f.lateral) < 1e-6 * std::abs(f.translational));
  CHECK(f.err_translational < 1e-2 * std::abs(f.translational));
}
