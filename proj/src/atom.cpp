#include "qfric/atom.hpp"

#include <cmath>
#include <stdexcept>

#include "qfric/constants.hpp"
#include "qfric/errors.hpp"

namespace qfric {

AtomParams AtomParams::from_boundary(double alpha0_A3, double omega_a_ev, double mass_u) {
  AtomParams a{constants::alpha_from_A3(alpha0_A3), omega_a_ev * constants::ev_to_rad_per_s,
               mass_u * constants::amu};
  a.validate();
  return a;
}

void AtomParams::validate() const {
  if (!(alpha0 > 0.0) || !(omega_a > 0.0) || !(mass > 0.0))
    throw std::invalid_argument("atom: alpha0, omega_a and mass must be positive");
}

double bare_polarizability(const AtomParams& atom, double omega) {
  const double den = atom.omega_a * atom.omega_a - omega * omega;
  if (den == 0.0) throw DomainError("bare polarizability has a pole at |omega| = omega_a", omega);
  return atom.alpha0 * atom.omega_a * atom.omega_a / den;
}

M3C dressed_polarizability(const AtomParams& atom, const M3C& k_integral, double omega) {
  const double wa2 = atom.omega_a * atom.omega_a;
  const double strength = atom.alpha0 * wa2;
  const M3C bracket = (wa2 - omega * omega) * M3C::identity() - strength * k_integral;
  try {
    return strength * inverse(bracket);
  } catch (const std::domain_error&) {
    throw ResonanceError(omega);
  }
}

SpectrumModel::SpectrumModel(AtomParams atom, Material material, double z, double v, SolverMode mode,
                             Backaction backaction, quad::QuadSpec inner)
    : atom_(atom),
      material_(std::move(material)),
      z_(z),
      v_(v),
      mode_(mode),
      backaction_(backaction),
      inner_(std::move(inner)) {
  atom_.validate();
  if (!(z_ > 0.0)) throw std::invalid_argument("spectrum model: z must be positive");
  if (!std::isfinite(v_)) throw std::invalid_argument("spectrum model: v must be finite");
}

KIntegral SpectrumModel::k_integral(double omega) const {
  const double v = response_velocity();
  if (v == 0.0) {
    KIntegral k;
    k.value = k_integral_static(material_, omega, z_);
    k.converged = true;
    return k;
  }
  return doppler_k_integral(material_, omega, v, z_, inner_);
}

M3C SpectrumModel::polarizability(double omega) const {
  return dressed_polarizability(atom_, k_integral(omega).value, omega);
}

SpectrumEval SpectrumModel::spectrum(double omega) const {
  const KIntegral k = k_integral(omega);
  const M3C alpha = dressed_polarizability(atom_, k.value, omega);

  SpectrumEval out;
  out.mode = mode_;
  out.omega = omega;
  out.quad_err = k.rel_err;

  M3C s = step(omega) * im_dagger(alpha);
  const double v = response_velocity();
  if (mode_ == SolverMode::ness && v != 0.0) {
    const KIntegral window = doppler_window_integral(material_, omega, v, z_, inner_);
    s += alpha * window.value * alpha.adjoint();
    out.quad_err = std::max(out.quad_err, window.rel_err);
  }
  out.S = (constants::hbar / constants::pi) * s;

  if (mode_ == SolverMode::ness) {
    const double tr = out.S.trace().real();
    const double tol = std::max(1e-6, 100.0 * inner_.rel_tol);
    const double lo = hermitian_eigenvalues(out.S)[0];
    if (lo < -tol * std::abs(tr)) {
      throw ConsistencyError("power spectrum not positive semidefinite at omega = " + std::to_string(omega) +
                             " (min eigenvalue " + std::to_string(lo) + ", trace " + std::to_string(tr) + ")");
    }
  }
  return out;
}

std::array<Resonance, 3> SpectrumModel::resonances() const {
  const double wa = atom_.omega_a;
  const double strength = atom_.alpha0 * wa * wa;
  std::array<Resonance, 3> out{};
  for (std::size_t j = 0; j < 3; ++j) {
    // fixed point of w^2 = w_a^2 - alpha0 w_a^2 Re K_jj(w); K varies on scales far wider than the shift
    double w = wa;
    cplx kjj = 0.0;
    for (int it = 0; it < 8; ++it) {
      kjj = k_integral(w).value(j, j);
      const double w2 = wa * wa - strength * kjj.real();
      if (!(w2 > 0.0)) throw ResonanceError(w);
      const double next = std::sqrt(w2);
      const bool done = std::abs(next - w) <= 1e-12 * wa;
      w = next;
      if (done) break;
    }
    kjj = k_integral(w).value(j, j);
    out[j].omega = w;
    out[j].width = std::abs(strength * kjj.imag() / (2.0 * w));
  }
  return out;
}

SpectrumEval power_spectrum(const SpectrumModel& model, double omega) { return model.spectrum(omega); }

}  // namespace qfric
