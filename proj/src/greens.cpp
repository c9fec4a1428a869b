#include "qfric/greens.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qfric/constants.hpp"
#include "qfric/errors.hpp"

namespace qfric {

using constants::eps0;
using constants::pi;

GreenEval green_nearfield(const Material& mat, const KVector& kv, double z, double omega, PiForm form) {
  const double k = kv.k();
  if (!(z > 0.0)) throw std::invalid_argument("green_nearfield: z must be positive");
  if (!(k > 0.0)) throw std::invalid_argument("green_nearfield: k must be positive");
  const cplx r = mat.reflection_p(omega);
  const double decay = std::exp(-2.0 * k * z) / (2.0 * eps0);
  const cplx pref = k * r * decay;
  const double cx = kv.kx / k, cy = kv.ky / k;
  const cplx I(0.0, 1.0);

  GreenEval g;
  g.sigma_diag = {cx * cx * pref, cy * cy * pref, pref};
  g.phi = kv.kx * r * decay;
  M3C& m = g.full;
  m(0, 0) = g.sigma_diag[0];
  m(1, 1) = g.sigma_diag[1];
  m(2, 2) = g.sigma_diag[2];
  m(0, 2) = -I * cx * pref;
  m(2, 0) = I * cx * pref;
  if (form == PiForm::full) {
    m(0, 1) = m(1, 0) = cx * cy * pref;
    m(1, 2) = -I * cy * pref;
    m(2, 1) = I * cy * pref;
  }
  return g;
}

double spin_ldos(const Material& mat, const KVector& kv, double z, double omega) {
  const double k = kv.k();
  return kv.kx * mat.reflection_p(omega).imag() * std::exp(-2.0 * k * z) / (2.0 * eps0);
}

M3C k_integral_static(const Material& mat, double omega, double z) {
  const cplx kzz = mat.reflection_p(omega) / (16.0 * pi * eps0 * z * z * z);
  return M3C::diag(0.5 * kzz, 0.5 * kzz, kzz);
}

namespace {

// kx values where w + kx v crosses +-w_sp; the reflection coefficient peaks there
std::vector<double> plasmon_lines(const Material& mat, double omega, double v) {
  std::vector<double> lines;
  if (v == 0.0) return lines;
  if (auto wsp = mat.plasmon_frequency()) {
    lines.push_back((*wsp - omega) / v);
    lines.push_back((-*wsp - omega) / v);
  }
  return lines;
}

// Entries far below the largest one cannot be resolved beyond double-precision
// cancellation in the shared integrand, so their tolerance is floored there.
quad::QuadSpec roundoff_limited(const quad::QuadSpec& spec) {
  quad::QuadSpec out = spec;
  out.component_floor = std::max(spec.component_floor, 1e-14 / spec.rel_tol);
  return out;
}

}  // namespace

KIntegral doppler_k_integral(const Material& mat, double omega, double v, double z, const quad::QuadSpec& spec) {
  if (!(z > 0.0)) throw std::invalid_argument("doppler_k_integral: z must be positive");
  const std::vector<double> lines = plasmon_lines(mat, omega, v);

  // theta and pi - theta are folded together so the odd-in-kx part (the xz
  // channel) is formed from r(w + kx v) - r(w - kx v) directly
  auto f = [&](double k, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx rp = mat.reflection_p(omega + k * c * v);
    const cplx rm = mat.reflection_p(omega - k * c * v);
    const double pref = k * std::exp(-2.0 * k * z) / (2.0 * eps0);
    const cplx even = pref * (rp + rm);
    const cplx odd = pref * (rp - rm);
    const cplx xz = cplx(0.0, -c) * odd;
    return std::array<double, 8>{c * c * even.real(), c * c * even.imag(), s * s * even.real(), s * s * even.imag(),
                                 even.real(),         even.imag(),         xz.real(),          xz.imag()};
  };
  auto r = quad::integrate_k_plane<8>(f, 2.0 * z, lines, quad::AngularRange::quadrant, roundoff_limited(spec));

  KIntegral out;
  M3C& m = out.value;
  m(0, 0) = {r.value[0], r.value[1]};
  m(1, 1) = {r.value[2], r.value[3]};
  m(2, 2) = {r.value[4], r.value[5]};
  m(0, 2) = {r.value[6], r.value[7]};
  m(2, 0) = -m(0, 2);
  out.rel_err = r.max_rel_err();
  out.n_evals = r.n_evals;
  out.converged = r.converged;
  if (!r.converged) throw QuadratureError("doppler_k_integral at omega = " + QuadratureError::format(omega), out.rel_err);
  return out;
}

KIntegral doppler_window_integral(const Material& mat, double omega, double v, double z,
                                  const quad::QuadSpec& spec) {
  if (!(z > 0.0)) throw std::invalid_argument("doppler_window_integral: z must be positive");
  KIntegral out;
  out.converged = true;
  if (v == 0.0) return out;

  std::vector<double> lines = plasmon_lines(mat, omega, v);
  lines.push_back(-omega / v);
  const double base = step(omega);

  auto f = [&](double k, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double shifted = omega + k * c * v;
    const double w = step(shifted) - base;
    if (w == 0.0) return std::array<double, 4>{};
    const double g = w * k * mat.reflection_p(shifted).imag() * std::exp(-2.0 * k * z) / (2.0 * eps0);
    return std::array<double, 4>{c * c * g, s * s * g, g, -c * g};
  };
  // The window enters next to Im K(w, 0); once it is far below that (an exp(-2 z |w| / v)
  // tail) only an absolute accuracy relative to Im K is meaningful.
  quad::QuadSpec wspec = roundoff_limited(spec);
  if (omega != 0.0)
    wspec.abs_floor = std::max(spec.abs_floor, 1e-3 * spec.rel_tol * std::abs(k_integral_static(mat, omega, z)(2, 2).imag()));
  auto r = quad::integrate_k_plane<4>(f, 2.0 * z, lines, quad::AngularRange::upper_half, wspec);

  M3C& m = out.value;
  m(0, 0) = r.value[0];
  m(1, 1) = r.value[1];
  m(2, 2) = r.value[2];
  m(0, 2) = cplx(0.0, r.value[3]);
  m(2, 0) = cplx(0.0, -r.value[3]);
  out.rel_err = r.max_rel_err();
  out.n_evals = r.n_evals;
  out.converged = r.converged;
  if (!r.converged) throw QuadratureError("doppler_window_integral at omega = " + QuadratureError::format(omega), out.rel_err);
  return out;
}

}  // namespace qfric
