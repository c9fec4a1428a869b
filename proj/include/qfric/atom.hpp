#pragma once

#include <array>
#include <vector>

#include "qfric/greens.hpp"
#include "qfric/material.hpp"
#include "qfric/matrix3.hpp"
#include "qfric/quad.hpp"

namespace qfric {

/// Isotropic Lorentz-oscillator atom, SI units.
struct AtomParams {
  double alpha0 = 0.0;   // C^2 m^2 / J
  double omega_a = 0.0;  // rad/s
  double mass = 0.0;     // kg

  /// alpha0 in Å^3 (4 pi eps0 units), omega_a in eV, mass in u.
  static AtomParams from_boundary(double alpha0_A3, double omega_a_ev, double mass_u);
  void validate() const;
};

enum class SolverMode {
  ness,  // full nonequilibrium spectrum
  lte,   // equilibrium fluctuation-dissipation applied locally (drops the window term)
};

enum class Backaction {
  on,   // polarizability dressed by the Doppler-shifted surface response K(w, v)
  off,  // dressed by the static response K(w, 0); the spectrum reduces to its equilibrium form
};

/// alpha0 w_a^2 / (w_a^2 - w^2). Throws DomainError on the poles.
double bare_polarizability(const AtomParams& atom, double omega);

/// alpha0 w_a^2 [(w_a^2 - w^2) I - alpha0 w_a^2 K]^-1, finite at w = w_a.
/// Throws ResonanceError when the bracket is singular.
M3C dressed_polarizability(const AtomParams& atom, const M3C& k_integral, double omega);

struct SpectrumEval {
  M3C S;  // C^2 m^2 s
  SolverMode mode = SolverMode::ness;
  double omega = 0.0;
  double quad_err = 0.0;  // worst relative error of the inner k-plane integrals
};

struct Resonance {
  double omega = 0.0;  // centre, rad/s
  double width = 0.0;  // half-width at half-maximum, rad/s
};

/// Atom + surface + motion: everything the dipole spectrum depends on.
class SpectrumModel {
 public:
  SpectrumModel(AtomParams atom, Material material, double z, double v, SolverMode mode, Backaction backaction,
                quad::QuadSpec inner);

  const AtomParams& atom() const { return atom_; }
  const Material& material() const { return material_; }
  double z() const { return z_; }
  double v() const { return v_; }
  SolverMode mode() const { return mode_; }
  Backaction backaction() const { return backaction_; }
  const quad::QuadSpec& inner_spec() const { return inner_; }

  /// Surface response seen by the atom (velocity-free when backaction is off).
  KIntegral k_integral(double omega) const;
  M3C polarizability(double omega) const;

  /// S(w, v) = (hbar/pi) [theta(w) alpha_Im + J]. J is dropped in LTE mode and when backaction is off.
  SpectrumEval spectrum(double omega) const;

  /// Dressed resonances of the x, y and z channels.
  std::array<Resonance, 3> resonances() const;

 private:
  double response_velocity() const { return backaction_ == Backaction::on ? v_ : 0.0; }

  AtomParams atom_;
  Material material_;
  double z_;
  double v_;
  SolverMode mode_;
  Backaction backaction_;
  quad::QuadSpec inner_;
};

/// Free-function form of SpectrumModel::spectrum.
SpectrumEval power_spectrum(const SpectrumModel& model, double omega);

}  // namespace qfric
