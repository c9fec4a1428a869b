#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "qfric/atom.hpp"
#include "qfric/material.hpp"
#include "qfric/matrix3.hpp"

namespace qfric {

struct Tolerances {
  double inner = 1e-6;          // k-plane integrals inside the spectrum (force path)
  double force = 1e-3;          // outer frequency integral of the forces
  double moment = 1e-7;         // outer frequency integrals of the spin moments
  double moment_inner = 1e-10;  // k-plane integrals behind the spin moments
  int max_subdivisions = 2000;
  double component_floor = 1e-9;  // inner tensor entries below this fraction of the largest are exempt
  int angular_panels = 1;         // initial angular panels per quarter turn of the k-plane
};

/// One evaluation context: atom at height za moving with velocity v along x.
struct Scenario {
  AtomParams atom;
  Material material;
  double za = 0.0;  // m
  double v = 0.0;   // m/s, signed
  SolverMode mode = SolverMode::ness;
  Backaction backaction = Backaction::on;
  Tolerances tol;

  void validate() const;
  SpectrumModel spectrum_model(double inner_rel_tol) const;
};

enum class Provenance { full, asymptotic };
std::string to_string(Provenance p);

struct ForceResult {
  double translational = 0.0;  // N, x component
  double rotational = 0.0;     // N, x component
  double lateral = 0.0;        // N, y component of the total (vanishes by symmetry)
  double err_translational = 0.0;
  double err_rotational = 0.0;
  bool converged = true;
  std::size_t n_spectra = 0;
};

/// Translational and rotational friction from the full nonequilibrium pipeline.
ForceResult friction_forces(const Scenario& s);
double friction_translational(const Scenario& s);
double friction_rotational(const Scenario& s);

struct ForcePair {
  double translational = 0.0;
  double rotational = 0.0;
};

/// Second order in alpha0 with an Ohmic surface: the k, k~ double integrals
/// evaluated by quadrature (separable polar reduction).
ForcePair friction_lowv(const Scenario& s, double rel_tol = 1e-9);

/// Closed forms -63/pi^3 and +45/pi^3 times hbar alpha0^2 rho^2 v^3 / (2 za)^10.
ForcePair friction_asymptotic(const Scenario& s);

struct LowVelocityCoefficients {
  double translational = 0.0;
  double rotational = 0.0;
  double err_translational = 0.0;
  double err_rotational = 0.0;
};

/// Dimensionless coefficients of the low-velocity forces (hbar = alpha0 = rho = v = 2 za = 1).
LowVelocityCoefficients lowv_coefficients(double rel_tol = 1e-9);

struct SpinMoments {
  std::array<double, 3> angular_momentum{};  // J s
  M3C inertia;                               // average moment-of-inertia tensor
  double rotation_frequency = 0.0;           // rad/s
  double numerator = 0.0;                    // int dw w Tr[S L_y]
  double denominator = 0.0;                  // int dw Tr[S L_y^2]
  double rel_err = 0.0;      // of numerator and denominator
  double spin_scale = 0.0;   // int dw |w| sqrt(S_xx S_zz) / (alpha0 w_a^2): cancellation scale of L_y
  bool converged = true;
  std::size_t n_spectra = 0;
};

/// Frequency moments of the dipole spectrum: angular momentum, inertia tensor, rotation frequency.
SpinMoments spin_moments(const Scenario& s);

std::array<double, 3> angular_momentum(const Scenario& s);
double rotation_frequency(const Scenario& s);
M3C moment_of_inertia(const Scenario& s);

/// -(v/za) / [1 + (r_R(w_a) / (3 r_I(w_a)))^2]
double rotation_frequency_asymptotic(const Scenario& s);

/// (F_t + F_r) / mass
double acceleration(const Scenario& s);

struct ObservableResult {
  double F_t = 0.0, F_r = 0.0, F_total = 0.0, F_y = 0.0;  // N
  double a = 0.0;                                         // m/s^2
  std::array<double, 3> L_vec{};                          // J s
  double Omega = 0.0;                                     // rad/s
  double err_F_t = 0.0, err_F_r = 0.0, err_spin = 0.0;    // relative
  Provenance provenance = Provenance::full;
  bool converged = true;

  double max_quad_err() const;
};

/// Full pipeline. Spin moments are skipped (left at zero) when with_spin is false.
ObservableResult evaluate(const Scenario& s, bool with_spin = true);

/// Closed-form low-velocity forces and near-field rotation frequency.
ObservableResult evaluate_asymptotic(const Scenario& s);

}  // namespace qfric
