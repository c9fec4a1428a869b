#include "doctest.h"
#include "qfric/quad.hpp"

#include <cmath>
#include <limits>

using namespace qfric;
using constants::pi;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

quad::QuadSpec tight() {
  quad::QuadSpec s;
  s.rel_tol = 1e-12;
  s.max_subdivisions = 2000;
  return s;
}
}  // namespace

TEST_CASE("exponential on the half line") {
  const auto r = quad::integrate_1d_scalar([](double u) { return std::exp(-u); }, 0.0, inf, tight());
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("u^9 exp(-u) gives 9!") {
  const auto r = quad::integrate_1d_scalar([](double u) { return std::pow(u, 9) * std::exp(-u); }, 0.0, inf, tight());
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(362880.0).epsilon(1e-11));
}

TEST_CASE("sign function with a breakpoint is exact") {
  quad::QuadSpec s = tight();
  s.breakpoints = {0.3};
  const auto r = quad::integrate_1d_scalar([](double u) { return u > 0.3 ? 1.0 : -1.0; }, 0.0, 1.0, s);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(r.n_panels == 2);
}

TEST_CASE("reversed and empty intervals") {
  const auto f = [](double x) { return x * x; };
  CHECK(quad::integrate_1d_scalar(f, 1.0, 0.0, tight()).value[0] == doctest::Approx(-1.0 / 3.0));
  CHECK(quad::integrate_1d_scalar(f, 2.0, 2.0, tight()).value[0] == 0.0);
  CHECK_THROWS_AS(quad::integrate_1d_scalar(f, std::nan(""), 1.0, tight()), std::invalid_argument);
}

TEST_CASE("whole real line and negative half line") {
  quad::QuadSpec s = tight();
  const auto g = quad::integrate_1d_scalar([](double x) { return std::exp(-x * x); }, -inf, inf, s);
  CHECK(g.value[0] == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
  const auto h = quad::integrate_1d_scalar([](double x) { return std::exp(x); }, -inf, 0.0, s);
  CHECK(h.value[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vector integrand tracks every component") {
  quad::QuadSpec s = tight();
  const auto r = quad::integrate_1d<3>(
      [](double x) { return std::array<double, 3>{std::sin(x), std::cos(x), x}; }, 0.0, pi, s);
  CHECK(r.value[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(r.value[1]) < 1e-12);
  CHECK(r.value[2] == doctest::Approx(pi * pi / 2).epsilon(1e-12));
}

TEST_CASE("budget exhaustion reports non-convergence") {
  quad::QuadSpec s;
  s.rel_tol = 1e-14;
  s.max_subdivisions = 3;
  const auto r = quad::integrate_1d_scalar([](double x) { return std::sqrt(std::abs(std::sin(50 * x))); }, 0.0, 10.0, s);
  CHECK_FALSE(r.converged);
  CHECK(r.err[0] > 0.0);
}

TEST_CASE("reference tolerance loosens a cancelling component") {
  quad::QuadSpec s;
  s.rel_tol = 1e-12;
  s.component_floor = 0.0;
  s.max_subdivisions = 3;
  // component 0 integrates to ~0 by cancellation; it is judged against component 1
  auto f = [](double x) { return std::array<double, 2>{std::sin(40 * x), 1.0}; };
  CHECK_FALSE(quad::integrate_1d<2>(f, 0.0, 2 * pi, s).converged);
  s.references = {{0, 1, 1e6}};
  CHECK(quad::integrate_1d<2>(f, 0.0, 2 * pi, s).converged);
}

TEST_CASE("k-plane integrals") {
  quad::QuadSpec s;
  s.rel_tol = 1e-10;
  s.max_subdivisions = 2000;
  const double z = 2.0;
  auto expo = [&](double k, double) { return std::array<double, 1>{std::exp(-2 * k * z)}; };
  for (auto range : {quad::AngularRange::full, quad::AngularRange::upper_half}) {
    const auto r = quad::integrate_k_plane<1>(expo, 2 * z, {}, range, s);
    CHECK(r.converged);
    CHECK(r.value[0] == doctest::Approx(1.0 / (8 * pi * z * z)).epsilon(1e-10));
  }
  // a line kx = c splits the plane; the half-plane Gaussian is erfc(c)/(8 pi)
  for (double c : {-1.0, 0.0, 0.4}) {
    const double line = c;
    auto gauss = [&](double k, double th) {
      return std::array<double, 1>{k * std::cos(th) > c ? std::exp(-k * k) : 0.0};
    };
    const auto r = quad::integrate_k_plane<1>(gauss, 1.0, std::span<const double>(&line, 1), quad::AngularRange::full, s);
    CHECK(r.value[0] == doctest::Approx(std::erfc(c) / (8 * pi)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(quad::integrate_k_plane<1>(expo, 0.0, {}, quad::AngularRange::full, s), std::invalid_argument);
}

TEST_CASE("angular panels do not change the result") {
  quad::QuadSpec s;
  s.rel_tol = 1e-10;
  auto f = [](double k, double th) { return std::array<double, 1>{std::exp(-k) * (1 + std::cos(th) * std::cos(th))}; };
  const double a = quad::integrate_k_plane<1>(f, 1.0, {}, quad::AngularRange::full, s).value[0];
  s.angular_panels = 8;
  const double b = quad::integrate_k_plane<1>(f, 1.0, {}, quad::AngularRange::full, s).value[0];
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
  CHECK(a == doctest::Approx(3.0 / (4 * pi)).epsilon(1e-10));
}
