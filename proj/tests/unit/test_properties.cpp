// Randomised invariants with fixed seeds.
#include "doctest.h"
#include "qfric/atom.hpp"
#include "qfric/config.hpp"
#include "qfric/constants.hpp"
#include "qfric/quad.hpp"
#include "qfric/sweep.hpp"

#include <cmath>
#include <random>

using namespace qfric;
using constants::pi;

namespace {
std::mt19937_64 rng(424242);
double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
}  // namespace

TEST_CASE("quadrature is linear and additive over subintervals") {
  quad::QuadSpec s;
  s.rel_tol = 1e-12;
  s.max_subdivisions = 2000;
  for (int t = 0; t < 30; ++t) {
    const double a = uniform(-3, 3), b = uniform(-3, 3), c = uniform(-3, 3), lam = uniform(-5, 5);
    const double w = uniform(0.5, 8);
    auto f = [&](double x) { return std::sin(w * x) * std::exp(-0.3 * x * x); };
    auto g = [&](double x) { return x * x * x - x; };
    const double fab = quad::integrate_1d_scalar(f, a, b, s).value[0];
    const double gab = quad::integrate_1d_scalar(g, a, b, s).value[0];
    const double lin = quad::integrate_1d_scalar([&](double x) { return f(x) + lam * g(x); }, a, b, s).value[0];
    CHECK(lin == doctest::Approx(fab + lam * gab).epsilon(1e-10).scale(1.0));
    const double split = quad::integrate_1d_scalar(f, a, c, s).value[0] + quad::integrate_1d_scalar(f, c, b, s).value[0];
    CHECK(split == doctest::Approx(fab).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("reported error bounds the true error for smooth integrands") {
  quad::QuadSpec s;
  s.rel_tol = 1e-9;
  for (int t = 0; t < 30; ++t) {
    const double a = log_uniform(0.1, 20.0);
    const auto r = quad::integrate_1d_scalar([a](double x) { return std::exp(-a * x); }, 0.0,
                                             std::numeric_limits<double>::infinity(), s);
    const double true_err = std::abs(r.value[0] - 1.0 / a);
    CHECK(true_err <= std::max(3.0 * r.err[0], 1e-14 / a));
  }
}

TEST_CASE("spectrum is Hermitian and positive for random frequencies and speeds") {
  const AtomParams rb = AtomParams::from_boundary(47.28, 1.3, 86.9);
  const Material gold = Material::drude_ev(9.0, 0.035, "gold");
  quad::QuadSpec inner;
  inner.rel_tol = 1e-7;
  inner.max_subdivisions = 2000;
  for (int t = 0; t < 25; ++t) {
    const double v = (uniform(0, 1) < 0.5 ? -1 : 1) * log_uniform(300, 1e5);
    const double w = (uniform(0, 1) < 0.5 ? -1 : 1) * log_uniform(1e10, 3e16);
    const SpectrumModel m(rb, gold, log_uniform(3e-9, 2e-8), v, SolverMode::ness, Backaction::on, inner);
    const M3C S = m.spectrum(w).S;
    if (S.max_abs() == 0.0) continue;
    CHECK((S - S.adjoint()).max_abs() <= 1e-12 * S.max_abs());
    CHECK(hermitian_eigenvalues(S)[0] >= -1e-5 * S.trace().real());
  }
}

TEST_CASE("surface response: crossing and velocity parity") {
  const Material gold = Material::drude_ev(9.0, 0.035, "gold");
  quad::QuadSpec spec;
  spec.rel_tol = 1e-8;
  spec.max_subdivisions = 2000;
  for (int t = 0; t < 8; ++t) {
    const double w = log_uniform(1e12, 1e16), v = log_uniform(1e3, 1e5), z = log_uniform(3e-9, 2e-8);
    const M3C kp = doppler_k_integral(gold, w, v, z, spec).value;
    const M3C km = doppler_k_integral(gold, -w, -v, z, spec).value;
    const M3C kv = doppler_k_integral(gold, w, -v, z, spec).value;
    // K(-w, -v) = K(w, v)^dagger: r(-w) = conj r(w) while the L_y channel keeps its factor i
    CHECK((km - kp.adjoint()).max_abs() <= 1e-7 * kp.max_abs());
    // v -> -v flips the xz channel only
    CHECK(std::abs(kv(2, 2) - kp(2, 2)) <= 1e-7 * kp.max_abs());
    CHECK(std::abs(kv(0, 2) + kp(0, 2)) <= 1e-7 * kp.max_abs());
  }
}

TEST_CASE("csv round-trip for arbitrary finite and non-finite values") {
  std::vector<OutputRow> rows;
  for (int t = 0; t < 200; ++t) {
    OutputRow r;
    double* f[] = {&r.v, &r.za, &r.F_t, &r.F_r, &r.F_total, &r.a, &r.Omega, &r.L_y, &r.max_quad_err};
    for (double* p : f) {
      const double u = uniform(0, 1);
      *p = u < 0.02 ? std::numeric_limits<double>::quiet_NaN()
           : u < 0.04 ? std::numeric_limits<double>::infinity()
                      : (uniform(0, 1) < 0.5 ? -1 : 1) * log_uniform(1e-300, 1e300);
    }
    r.mode = t % 2 ? "ness" : "lte-nobackaction";
    r.provenance = t % 3 ? "full" : "asymptotic:unconverged";
    rows.push_back(r);
  }
  const std::string text = write_csv(rows);
  CHECK(write_csv(parse_csv(text)) == text);
}

TEST_CASE("config text form round-trips random overrides") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> choices = {
      {"solver.mode", {"ness", "lte"}},
      {"solver.backaction", {"on", "off"}},
      {"sweep.axis", {"v", "za"}},
      {"sweep.spin", {"true", "false"}}};
  for (int t = 0; t < 50; ++t) {
    KeyValueConfig c = preset(t % 2 ? "li-na" : "rb-au-fig2");
    for (const auto& [k, opts] : choices) c.set(k, opts[static_cast<std::size_t>(uniform(0, 1) * opts.size()) % opts.size()]);
    c.set("scenario.za_nm", format_number(log_uniform(1, 100)));
    CHECK(KeyValueConfig::parse(c.to_text()).entries() == c.entries());
  }
}
