#include "doctest.h"
#include "qfric/matrix3.hpp"

#include <random>

using namespace qfric;

namespace {

M3C random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::array<cplx, 9> a;
  for (auto& x : a) x = {n(rng), n(rng)};
  return M3C(a);
}

}  // namespace

TEST_CASE("generators satisfy the so(3) algebra") {
  const M3C Lx = generator(Axis::x), Ly = generator(Axis::y), Lz = generator(Axis::z);
  const cplx i{0, 1};
  CHECK((commutator(Lx, Ly) - i * Lz).max_abs() == 0.0);
  CHECK((commutator(Ly, Lz) - i * Lx).max_abs() == 0.0);
  CHECK((commutator(Lz, Lx) - i * Ly).max_abs() == 0.0);
  CHECK(Ly(Axis::x, Axis::z) == i);
  CHECK(Ly(Axis::z, Axis::x) == -i);
  CHECK((Ly * Ly - M3C::diag(1, 0, 1)).max_abs() == 0.0);
}

TEST_CASE("symmetric/antisymmetric and real/imaginary splits reassemble") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const M3C m = random_matrix(rng);
    CHECK((sym_part(m) + asym_part(m) - m).max_abs() < 1e-15);
    CHECK((sym_part(m) - sym_part(m).transpose()).max_abs() == 0.0);
    CHECK((asym_part(m) + asym_part(m).transpose()).max_abs() == 0.0);
    CHECK((re_part(m) + cplx{0, 1} * im_part(m) - m).max_abs() < 1e-15);
  }
}

TEST_CASE("im_dagger is Hermitian and equals Im for symmetric matrices") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const M3C m = random_matrix(rng);
    const M3C h = im_dagger(m);
    CHECK((h - h.adjoint()).max_abs() < 1e-15);
    const M3C s = sym_part(m);
    CHECK((im_dagger(s) - im_part(s)).max_abs() < 1e-14);
  }
}

TEST_CASE("inverse and determinant") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const M3C m = random_matrix(rng);
    CHECK((inverse(m) * m - M3C::identity()).max_abs() < 1e-10);
  }
  CHECK_THROWS_AS(inverse(M3C::diag(1, 1, 0)), std::domain_error);
  CHECK(std::abs(M3C::diag(2, 3, cplx{0, 1}).det() - cplx{0, 6}) < 1e-15);
}

TEST_CASE("hermitian eigenvalues") {
  const auto e = hermitian_eigenvalues(M3C::diag(3, -1, 2));
  CHECK(e[0] == doctest::Approx(-1));
  CHECK(e[1] == doctest::Approx(2));
  CHECK(e[2] == doctest::Approx(3));
  // L_y has eigenvalues -1, 0, 1
  const auto l = hermitian_eigenvalues(generator(Axis::y));
  CHECK(l[0] == doctest::Approx(-1));
  CHECK(std::abs(l[1]) < 1e-14);
  CHECK(l[2] == doctest::Approx(1));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const M3C m = random_matrix(rng);
    const M3C h = m * m.adjoint();  // positive semidefinite
    const auto ev = hermitian_eigenvalues(h);
    CHECK(ev[0] >= -1e-12 * ev[2]);
    CHECK(ev[0] + ev[1] + ev[2] == doctest::Approx(h.trace().real()).epsilon(1e-12));
  }
}

TEST_CASE("trace_product") {
  std::mt19937_64 rng(5);
  const M3C a = random_matrix(rng), b = random_matrix(rng);
  CHECK(std::abs(trace_product(a, b) - (a * b).trace()) < 1e-13);
}
