#include "doctest.h"
#include "qfric/atom.hpp"
#include "qfric/constants.hpp"

#include <cmath>

using namespace qfric;

namespace {
const AtomParams rb = AtomParams::from_boundary(47.28, 1.3, 86.9);
const Material gold = Material::drude_ev(9.0, 0.035, "gold");
constexpr double z = 5e-9;

SpectrumModel model(double v, SolverMode mode = SolverMode::ness, Backaction b = Backaction::on) {
  quad::QuadSpec inner;
  inner.rel_tol = 1e-8;
  inner.max_subdivisions = 2000;
  return SpectrumModel(rb, gold, z, v, mode, b, inner);
}
}  // namespace

TEST_CASE("unit conversion at the boundary") {
  CHECK(rb.alpha0 == doctest::Approx(4 * constants::pi * constants::eps0 * 47.28e-30));
  CHECK(rb.omega_a == doctest::Approx(1.3 * 1.519267e15).epsilon(1e-6));
  CHECK(rb.mass == doctest::Approx(86.9 * 1.66053906660e-27));
  CHECK_THROWS_AS(AtomParams::from_boundary(-1, 1, 1).validate(), std::invalid_argument);
}

TEST_CASE("bare polarizability") {
  CHECK(bare_polarizability(rb, 0.0) == rb.alpha0);
  CHECK(bare_polarizability(rb, 2 * rb.omega_a) == doctest::Approx(-rb.alpha0 / 3));
  CHECK_THROWS_AS(bare_polarizability(rb, rb.omega_a), DomainError);
}

TEST_CASE("dressed polarizability reduces to the bare one far from the surface") {
  const M3C a = dressed_polarizability(rb, M3C{}, 0.5 * rb.omega_a);
  CHECK(a(0, 0).real() == doctest::Approx(bare_polarizability(rb, 0.5 * rb.omega_a)));
  CHECK(std::abs(a(0, 2)) == 0.0);
  CHECK_THROWS_AS(dressed_polarizability(rb, M3C{}, rb.omega_a), ResonanceError);
  // finite on the bare resonance once the surface response is on
  const M3C k = k_integral_static(gold, rb.omega_a, z);
  CHECK(std::isfinite(std::abs(dressed_polarizability(rb, k, rb.omega_a)(2, 2))));
}

TEST_CASE("sandwich identity im_dagger(alpha) = alpha im_dagger(K) alpha^dagger") {
  const SpectrumModel m = model(1e4);
  for (double w : {0.3 * rb.omega_a, 0.999 * rb.omega_a, rb.omega_a, 1.7 * rb.omega_a}) {
    const M3C k = m.k_integral(w).value;
    const M3C a = dressed_polarizability(rb, k, w);
    const M3C rhs = a * im_dagger(k) * a.adjoint();
    CHECK((im_dagger(a) - rhs).max_abs() < 1e-10 * im_dagger(a).max_abs());
  }
}

TEST_CASE("equilibrium spectrum") {
  const SpectrumModel ness = model(0.0), lte = model(0.0, SolverMode::lte);
  for (double w : {1e13, 0.99 * rb.omega_a, 3e15}) {
    const SpectrumEval e = ness.spectrum(w);
    CHECK(e.S == lte.spectrum(w).S);
    CHECK(ness.spectrum(-w).S.max_abs() == 0.0);
    CHECK((e.S - e.S.adjoint()).max_abs() <= 1e-15 * e.S.max_abs());
    CHECK(hermitian_eigenvalues(e.S)[0] >= 0.0);
  }
}

TEST_CASE("moving atom: negative-frequency excitation only in NESS") {
  const SpectrumModel ness = model(1e4), lte = model(1e4, SolverMode::lte);
  const double w = -1e13;
  const SpectrumEval n = ness.spectrum(w);
  CHECK(n.S.trace().real() > 0.0);
  CHECK(lte.spectrum(w).S.max_abs() == 0.0);
  const SpectrumEval p = ness.spectrum(rb.omega_a);
  CHECK((p.S - p.S.adjoint()).max_abs() <= 1e-12 * p.S.max_abs());
}

TEST_CASE("backaction off uses the static response") {
  const SpectrumModel off = model(1e4, SolverMode::ness, Backaction::off);
  const M3C k = off.k_integral(2e15).value;
  CHECK((k - k_integral_static(gold, 2e15, z)).max_abs() == 0.0);
  CHECK(off.spectrum(-1e13).S.max_abs() == 0.0);
}

TEST_CASE("dressed resonances sit near omega_a with a surface-induced width") {
  const auto res = model(0.0).resonances();
  for (const Resonance& r : res) {
    CHECK(std::abs(r.omega / rb.omega_a - 1.0) < 0.05);
    CHECK(r.width > 0.0);
  }
  // the z channel couples twice as strongly as x and y
  CHECK(res[2].width == doctest::Approx(2 * res[0].width).epsilon(0.05));
  CHECK(res[0].omega == doctest::Approx(res[1].omega));
}
