#include "doctest.h"
#include "qfric/constants.hpp"
#include "qfric/greens.hpp"

#include <cmath>
#include <random>

using namespace qfric;
using constants::pi;

namespace {
const Material gold = Material::drude_ev(9.0, 0.035, "gold");
constexpr double z = 5e-9;
}  // namespace

TEST_CASE("sigma/phi decomposition reassembles the reduced tensor") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    const KVector kv = KVector::polar(std::pow(10.0, 7 + 3 * u(rng)), 2 * pi * u(rng));
    const double w = (u(rng) < 0.5 ? -1 : 1) * std::pow(10.0, 11 + 5 * u(rng));
    const GreenEval g = green_nearfield(gold, kv, z, w);
    const M3C rebuilt = M3C::diag(g.sigma_diag[0], g.sigma_diag[1], g.sigma_diag[2]) - g.phi * generator(Axis::y);
    CHECK((rebuilt - g.full).max_abs() <= 4e-16 * g.full.max_abs());
    CHECK(g.phi.imag() == doctest::Approx(spin_ldos(gold, kv, z, w)));
  }
}

TEST_CASE("spin-momentum locking: phi is odd in kx, sigma is even") {
  const KVector kv{3e8, 1e8};
  const GreenEval a = green_nearfield(gold, kv, z, 2e15);
  const GreenEval b = green_nearfield(gold, KVector{-kv.kx, kv.ky}, z, 2e15);
  CHECK(a.phi == -b.phi);
  for (int j = 0; j < 3; ++j) CHECK(a.sigma_diag[j] == b.sigma_diag[j]);
}

TEST_CASE("full form adds the ky couplings, which average out") {
  const KVector kv{3e8, 1e8};
  const GreenEval f = green_nearfield(gold, kv, z, 2e15, PiForm::full);
  const GreenEval r = green_nearfield(gold, kv, z, 2e15, PiForm::reduced);
  CHECK(f.full(0, 1) != cplx{});
  CHECK(r.full(0, 1) == cplx{});
  const GreenEval m = green_nearfield(gold, KVector{kv.kx, -kv.ky}, z, 2e15, PiForm::full);
  CHECK(((f.full + m.full) * cplx(0.5) - r.full).max_abs() < 1e-12 * r.full.max_abs());
}

TEST_CASE("K at rest: quadrature matches the closed form") {
  quad::QuadSpec spec;
  spec.rel_tol = 1e-8;
  spec.max_subdivisions = 2000;
  for (double w : {1e12, 1.97e15, 6.8e15}) {
    const KIntegral num = doppler_k_integral(gold, w, 0.0, z, spec);
    const M3C ref = k_integral_static(gold, w, z);
    CHECK(num.converged);
    CHECK((num.value - ref).max_abs() < 1e-7 * ref.max_abs());
    CHECK(hermitian_eigenvalues(im_dagger(ref))[0] >= 0.0);
  }
}

TEST_CASE("moving K: xz channel appears, structure and parity in v") {
  quad::QuadSpec spec;
  spec.rel_tol = 1e-7;
  spec.max_subdivisions = 2000;
  const double w = 1.9e15, v = 1e4;
  const KIntegral p = doppler_k_integral(gold, w, v, z, spec);
  const KIntegral m = doppler_k_integral(gold, w, -v, z, spec);
  CHECK(std::abs(p.value(0, 2)) > 0.0);
  CHECK(p.value(2, 0) == -p.value(0, 2));
  CHECK(p.value(0, 1) == cplx{});
  CHECK(std::abs(p.value(0, 2) + m.value(0, 2)) < 1e-6 * std::abs(p.value(0, 2)));
  CHECK(std::abs(p.value(2, 2) - m.value(2, 2)) < 1e-6 * std::abs(p.value(2, 2)));
}

TEST_CASE("anomalous-Doppler window") {
  quad::QuadSpec spec;
  spec.rel_tol = 1e-7;
  spec.max_subdivisions = 2000;
  CHECK(doppler_window_integral(gold, 1e14, 0.0, z, spec).value.max_abs() == 0.0);
  // for w < 0 the window collects positive-frequency surface modes: Hermitian and PSD
  const KIntegral j = doppler_window_integral(gold, -2e13, 1e4, z, spec);
  CHECK((j.value - j.value.adjoint()).max_abs() == 0.0);
  CHECK(j.value(2, 2).real() > 0.0);
  CHECK(hermitian_eigenvalues(j.value)[0] >= -1e-9 * j.value(2, 2).real());
}

TEST_CASE("heaviside convention") {
  CHECK(step(1.0) == 1.0);
  CHECK(step(-1.0) == 0.0);
  CHECK(step(0.0) == 0.5);
}

TEST_CASE("invalid geometry") {
  CHECK_THROWS_AS(green_nearfield(gold, KVector{1e8, 0}, 0.0, 1e15), std::invalid_argument);
  CHECK_THROWS_AS(green_nearfield(gold, KVector{0, 0}, z, 1e15), std::invalid_argument);
}
