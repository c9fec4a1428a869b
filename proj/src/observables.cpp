#include "qfric/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qfric/constants.hpp"
#include "qfric/errors.hpp"
#include "qfric/greens.hpp"
#include "qfric/quad.hpp"

namespace qfric {

using constants::hbar;
using constants::pi;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// exp(-x) below this is treated as absent when deciding which spectral
// features can reach the force integrand
constexpr double negligible_exponent = 700.0;

}  // namespace

void Scenario::validate() const {
  atom.validate();
  if (!(za > 0.0)) throw std::invalid_argument("scenario: za must be positive");
  if (!std::isfinite(v)) throw std::invalid_argument("scenario: v must be finite");
}

SpectrumModel Scenario::spectrum_model(double inner_rel_tol) const {
  quad::QuadSpec inner;
  inner.rel_tol = inner_rel_tol;
  inner.max_subdivisions = tol.max_subdivisions;
  inner.component_floor = tol.component_floor;
  inner.angular_panels = tol.angular_panels;
  return SpectrumModel(atom, material, za, v, mode, backaction, inner);
}

std::string to_string(Provenance p) { return p == Provenance::full ? "full" : "asymptotic"; }

// F = -2 int_0^inf dw int d^2k/(2pi)^2 k Tr[S^T_{R,I}(-(w - kx v)) . G^{s,as}_{I,R}(k, w)].
// The co-moving frequency w'' = kx v - w is taken as the outer variable, so each
// spectrum evaluation feeds one k-plane integral over the region kx v - w'' >= 0.
ForceResult friction_forces(const Scenario& s) {
  s.validate();
  ForceResult out;
  if (s.v == 0.0) return out;

  const SpectrumModel model = s.spectrum_model(s.tol.inner);
  const double v = s.v, z = s.za;
  const double scale = std::abs(v) / (2.0 * z);

  quad::QuadSpec kspec;
  kspec.rel_tol = s.tol.inner;
  kspec.component_floor = 1e-3;  // the ky-weighted entries cancel to zero
  kspec.max_subdivisions = s.tol.max_subdivisions;
  kspec.angular_panels = s.tol.angular_panels;

  std::size_t n_spectra = 0;
  // entries 4..7 carry the inner k-plane error so it can be folded into the total
  auto integrand = [&](double wpp) {
    const SpectrumEval se = model.spectrum(wpp);
    ++n_spectra;
    const M3C st = se.S.transpose();
    const M3C s_re = re_part(st);
    const M3C s_im = im_part(st);
    auto f = [&](double k, double theta) {
      const KVector kv = KVector::polar(k, theta);
      const double w = kv.kx * v - wpp;
      if (w <= 0.0) return std::array<double, 4>{};
      const GreenEval g = green_nearfield(s.material, kv, z, w);
      const double tt = trace_product(s_re, im_part(sym_part(g.full))).real();
      const double tr = trace_product(s_im, re_part(asym_part(g.full))).real();
      return std::array<double, 4>{kv.kx * tt, kv.kx * tr, kv.ky * tt, kv.ky * tr};
    };
    const double line = wpp / v;
    auto r = quad::integrate_k_plane<4>(f, 2.0 * z, std::span<const double>(&line, 1), quad::AngularRange::full,
                                        kspec);
    std::array<double, 8> out{};
    for (std::size_t q = 0; q < 4; ++q) {
      out[q] = -2.0 * r.value[q];
      out[4 + q] = 2.0 * r.err[q];
    }
    return out;
  };

  quad::QuadSpec outer;
  outer.rel_tol = s.tol.force;
  outer.component_floor = 1e-3;
  outer.max_subdivisions = s.tol.max_subdivisions;
  outer.decay_scale = scale;
  outer.breakpoints = {scale, 8.0 * scale};

  // resonant features of S only matter once the exp(-2 za w''/v) weight lets them through
  for (const Resonance& res : model.resonances()) {
    if (2.0 * z * res.omega / std::abs(v) < negligible_exponent) {
      for (double m : {-50.0, -1.0, 0.0, 1.0, 50.0}) outer.breakpoints.push_back(res.omega + m * res.width);
    }
  }
  if (auto wsp = s.material.plasmon_frequency()) {
    if (2.0 * z * *wsp / std::abs(v) < negligible_exponent) {
      for (double m : {-10.0, 0.0, 10.0}) outer.breakpoints.push_back(*wsp + m * s.material.gamma());
    }
  }

  const auto lower = quad::integrate_1d<8>(integrand, -inf, 0.0, outer, 4);
  const auto upper = quad::integrate_1d<8>(integrand, 0.0, inf, outer, 4);

  std::array<double, 4> val{}, err{};
  for (std::size_t q = 0; q < 4; ++q) {
    val[q] = lower.value[q] + upper.value[q];
    err[q] = lower.err[q] + upper.err[q] + std::abs(lower.value[4 + q]) + std::abs(upper.value[4 + q]);
  }
  out.translational = val[0];
  out.rotational = val[1];
  out.lateral = val[2] + val[3];
  out.err_translational = err[0];
  out.err_rotational = err[1];
  out.converged = lower.converged && upper.converged && quad::within_tolerance<4>(val, err, outer, 2.0, 2);
  out.n_spectra = n_spectra;
  return out;
}

double friction_translational(const Scenario& s) { return friction_forces(s).translational; }
double friction_rotational(const Scenario& s) { return friction_forces(s).rotational; }

namespace {

// Moments int d^2k/(2pi)^2 kx^p sigma'_I,i(k) and kx^p phi'_I(k) for p = 0..4, with
// sigma'_I = rho k diag(kx^2/k^2, ky^2/k^2, 1) e^{-2kz} and phi'_I = rho kx e^{-2kz}.
struct LowVMoments {
  std::array<std::array<double, 3>, 5> sigma{};  // [p][channel]
  std::array<double, 5> phi{};
};

LowVMoments lowv_moments(double rho, double z, double rel_tol) {
  quad::QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.component_floor = 1e-6;  // odd moments vanish
  spec.max_subdivisions = 2000;
  auto f = [&](double k, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    const double kx = k * c;
    const double e = rho * std::exp(-2.0 * k * z);
    std::array<double, 20> out{};
    double pw = 1.0;
    for (std::size_t p = 0; p <= 4; ++p) {
      const std::size_t b = 4 * p;
      out[b + 0] = pw * k * c * c * e;
      out[b + 1] = pw * k * sn * sn * e;
      out[b + 2] = pw * k * e;
      out[b + 3] = pw * kx * e;
      pw *= kx;
    }
    return out;
  };
  auto r = quad::integrate_k_plane<20>(f, 2.0 * z, {}, quad::AngularRange::full, spec);
  if (!r.converged) throw QuadratureError("low-velocity moments", r.max_rel_err());
  LowVMoments m;
  for (std::size_t p = 0; p <= 4; ++p) {
    const std::size_t b = 4 * p;
    m.sigma[p] = {r.value[b], r.value[b + 1], r.value[b + 2]};
    m.phi[p] = r.value[b + 3];
  }
  return m;
}

// -alpha0^2 v^3 (hbar/pi) int int (kx/6)(kx + kx~)^3 {Tr[sigma' sigma~'], Tr[Ly^T Ly] phi' phi~'}
ForcePair lowv_forces(double alpha0, double rho, double v, double z, double hb, double rel_tol) {
  const LowVMoments m = lowv_moments(rho, z, rel_tol);
  const double tr_ll = trace_product(generator(Axis::y).transpose(), generator(Axis::y)).real();
  static constexpr std::array<double, 4> binom{1.0, 3.0, 3.0, 1.0};
  double st = 0.0, sr = 0.0;
  // kx (kx + kx~)^3 = sum_n C(3,n) kx^(1+n) kx~^(3-n)
  for (std::size_t n = 0; n <= 3; ++n) {
    const std::size_t p = 1 + n, q = 3 - n;
    for (std::size_t i = 0; i < 3; ++i) st += binom[n] / 6.0 * m.sigma[p][i] * m.sigma[q][i];
    sr += binom[n] / 6.0 * m.phi[p] * m.phi[q];
  }
  const double pre = -alpha0 * alpha0 * v * v * v * hb / pi;
  return {pre * st, pre * tr_ll * sr};
}

}  // namespace

ForcePair friction_lowv(const Scenario& s, double rel_tol) {
  s.validate();
  return lowv_forces(s.atom.alpha0, s.material.ohmic_slope(), s.v, s.za, hbar, rel_tol);
}

ForcePair friction_asymptotic(const Scenario& s) {
  s.validate();
  const double rho = s.material.ohmic_slope();
  const double base = hbar * s.atom.alpha0 * s.atom.alpha0 * rho * rho * s.v * s.v * s.v / std::pow(2.0 * s.za, 10);
  const double pi3 = pi * pi * pi;
  return {-63.0 / pi3 * base, 45.0 / pi3 * base};
}

LowVelocityCoefficients lowv_coefficients(double rel_tol) {
  const ForcePair f = lowv_forces(1.0, 1.0, 1.0, 0.5, 1.0, rel_tol);
  LowVelocityCoefficients c;
  c.translational = f.translational;
  c.rotational = f.rotational;
  c.err_translational = rel_tol * std::abs(f.translational);
  c.err_rotational = rel_tol * std::abs(f.rotational);
  return c;
}

SpinMoments spin_moments(const Scenario& s) {
  s.validate();
  SpinMoments out;
  const double wa = s.atom.omega_a;
  const double strength = s.atom.alpha0 * wa * wa;
  const SpectrumModel model = s.spectrum_model(s.tol.moment_inner);
  const M3C ly = generator(Axis::y), lx = generator(Axis::x), lz = generator(Axis::z);
  const M3C ly2 = ly * ly;

  constexpr std::size_t n = 14;
  std::size_t n_spectra = 0;
  // Frequency-weighted entries are scaled by 1/w_a to keep all components comparable.
  // The last entry, |w| sqrt(S_xx S_zz) >= |w Tr[S L_y]| / 2, sizes the cancellation
  // in the spin numerator and the off-diagonal entries.
  auto integrand = [&](double w) {
    const M3C S = model.spectrum(w).S;
    ++n_spectra;
    const double x = w / wa;
    const double spin = x * trace_product(S, ly).real();
    return std::array<double, n>{spin,
                                 trace_product(S, ly2).real(),
                                 x * trace_product(lx, S).real(),
                                 x * trace_product(lz, S).real(),
                                 S(0, 0).real(),
                                 S(1, 1).real(),
                                 S(2, 2).real(),
                                 S(0, 1).real(),
                                 S(0, 1).imag(),
                                 S(0, 2).real(),
                                 S(0, 2).imag(),
                                 S(1, 2).real(),
                                 S(1, 2).imag(),
                                 std::abs(x) * std::sqrt(std::abs(S(0, 0).real() * S(2, 2).real()))};
  };

  const double scale = std::abs(s.v) / (2.0 * s.za);
  const bool has_window = s.mode == SolverMode::ness && s.backaction == Backaction::on && s.v != 0.0;

  quad::QuadSpec spec;
  spec.rel_tol = s.tol.moment;
  spec.component_floor = 1e-12;
  spec.max_subdivisions = s.tol.max_subdivisions;
  // S itself is only known to the inner tolerance, which bounds how far the
  // cancelling spin integrals can be resolved
  const double ratio = 10.0 * s.tol.moment_inner / s.tol.moment;
  for (std::size_t q : {0, 2, 3, 7, 8, 9, 10, 11, 12}) spec.references.push_back({q, n - 1, ratio});

  quad::QuadResult<n> lower;
  lower.converged = true;
  if (has_window) {
    spec.decay_scale = scale;
    lower = quad::integrate_1d<n>(integrand, -inf, 0.0, spec);
  }

  spec.decay_scale = wa;
  if (has_window)
    for (double m : {1.0, 4.0, 16.0, 64.0}) spec.breakpoints.push_back(m * scale);
  for (const Resonance& res : model.resonances()) {
    for (double m : {-64.0, -16.0, -4.0, -1.0, 0.0, 1.0, 4.0, 16.0, 64.0})
      spec.breakpoints.push_back(res.omega + m * res.width);
  }
  if (auto wsp = s.material.plasmon_frequency()) {
    for (double m : {-16.0, -4.0, -1.0, 0.0, 1.0, 4.0, 16.0}) spec.breakpoints.push_back(*wsp + m * s.material.gamma());
  }
  const auto upper = quad::integrate_1d<n>(integrand, 0.0, inf, spec);

  std::array<double, n> tot{};
  for (std::size_t q = 0; q < n; ++q) tot[q] = lower.value[q] + upper.value[q];
  double worst = 0.0;
  for (std::size_t q = 0; q < 2; ++q) {
    const double e = lower.err[q] + upper.err[q];
    if (tot[q] != 0.0) worst = std::max(worst, e / std::abs(tot[q]));
  }

  out.numerator = wa * tot[0];
  out.denominator = tot[1];
  if (!(out.denominator > 0.0)) throw ConsistencyError("rotation frequency: degenerate spectrum (zero inertia)");
  out.rotation_frequency = out.numerator / out.denominator;
  out.angular_momentum = {wa * tot[2] / strength, wa * tot[0] / strength, wa * tot[3] / strength};

  M3C sint;
  sint(0, 0) = tot[4];
  sint(1, 1) = tot[5];
  sint(2, 2) = tot[6];
  sint(0, 1) = {tot[7], tot[8]};
  sint(0, 2) = {tot[9], tot[10]};
  sint(1, 2) = {tot[11], tot[12]};
  sint(1, 0) = std::conj(sint(0, 1));
  sint(2, 0) = std::conj(sint(0, 2));
  sint(2, 1) = std::conj(sint(1, 2));
  out.inertia = (1.0 / strength) * (sint.trace() * M3C::identity() - sint);

  out.rel_err = worst;
  out.spin_scale = wa * tot[n - 1] / strength;
  out.converged = lower.converged && upper.converged;
  out.n_spectra = n_spectra;
  return out;
}

std::array<double, 3> angular_momentum(const Scenario& s) { return spin_moments(s).angular_momentum; }
double rotation_frequency(const Scenario& s) { return spin_moments(s).rotation_frequency; }
M3C moment_of_inertia(const Scenario& s) { return spin_moments(s).inertia; }

double rotation_frequency_asymptotic(const Scenario& s) {
  s.validate();
  const cplx r = s.material.reflection_p(s.atom.omega_a);
  const double q = r.real() / (3.0 * r.imag());
  return -(s.v / s.za) / (1.0 + q * q);
}

double acceleration(const Scenario& s) {
  const ForceResult f = friction_forces(s);
  return (f.translational + f.rotational) / s.atom.mass;
}

double ObservableResult::max_quad_err() const { return std::max({err_F_t, err_F_r, err_spin}); }

ObservableResult evaluate(const Scenario& s, bool with_spin) {
  ObservableResult o;
  const ForceResult f = friction_forces(s);
  o.F_t = f.translational;
  o.F_r = f.rotational;
  o.F_total = f.translational + f.rotational;
  o.F_y = f.lateral;
  o.a = o.F_total / s.atom.mass;
  o.err_F_t = f.translational != 0.0 ? f.err_translational / std::abs(f.translational) : 0.0;
  o.err_F_r = f.rotational != 0.0 ? f.err_rotational / std::abs(f.rotational) : 0.0;
  o.converged = f.converged;
  if (with_spin) {
    const SpinMoments m = spin_moments(s);
    o.L_vec = m.angular_momentum;
    o.Omega = m.rotation_frequency;
    o.err_spin = m.rel_err;
    o.converged = o.converged && m.converged;
  }
  o.provenance = Provenance::full;
  return o;
}

ObservableResult evaluate_asymptotic(const Scenario& s) {
  ObservableResult o;
  const ForcePair f = friction_asymptotic(s);
  o.F_t = f.translational;
  o.F_r = f.rotational;
  o.F_total = f.translational + f.rotational;
  o.a = o.F_total / s.atom.mass;
  o.Omega = rotation_frequency_asymptotic(s);
  // leading order: M_yy = <d_x^2 + d_z^2> / (alpha0 w_a^2) = hbar / w_a
  o.L_vec = {0.0, o.Omega * hbar / s.atom.omega_a, 0.0};
  o.provenance = Provenance::asymptotic;
  return o;
}

}  // namespace qfric
