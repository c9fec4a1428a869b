#pragma once

#include <array>
#include <cmath>

#include "qfric/material.hpp"
#include "qfric/matrix3.hpp"
#include "qfric/quad.hpp"

namespace qfric {

/// Surface-parallel wave vector (1/m).
struct KVector {
  double kx = 0.0;
  double ky = 0.0;

  static KVector polar(double k, double theta) { return {k * std::cos(theta), k * std::sin(theta)}; }
  double k() const { return std::hypot(kx, ky); }
  double theta() const { return std::atan2(ky, kx); }
};

enum class PiForm {
  reduced,  // xy and yz entries dropped (they integrate to zero in every observable)
  full,
};

/// Near-field scattered Green tensor split into its spin-zero (diagonal) and
/// spin-carrying (-phi L_y) channels. Units 1/(eps0 m^3) after k-integration.
struct GreenEval {
  M3C full;
  std::array<cplx, 3> sigma_diag{};
  cplx phi{};
};

/// G(k, z, w) = Pi k r[w] exp(-2 k z) / (2 eps0).
GreenEval green_nearfield(const Material& mat, const KVector& kv, double z, double omega,
                          PiForm form = PiForm::reduced);

/// Im phi = kx Im r[w] exp(-2kz) / (2 eps0). Negative values carry positive photon spin along y.
double spin_ldos(const Material& mat, const KVector& kv, double z, double omega);

/// Result of a k-plane integral of the Green tensor.
struct KIntegral {
  M3C value;
  double rel_err = 0.0;
  std::size_t n_evals = 0;
  bool converged = false;
};

/// K(w, v) = int d^2k/(2pi)^2 G(k, z, w + kx v). Throws QuadratureError on non-convergence.
KIntegral doppler_k_integral(const Material& mat, double omega, double v, double z, const quad::QuadSpec& spec);

/// Closed form of K at v = 0: r[w] diag(1/2, 1/2, 1) / (16 pi eps0 z^3).
M3C k_integral_static(const Material& mat, double omega, double z);

/// int d^2k/(2pi)^2 [theta(w + kx v) - theta(w)] G_Im(k, z, w + kx v), the
/// anomalous-Doppler window entering the nonequilibrium correction. Hermitian.
KIntegral doppler_window_integral(const Material& mat, double omega, double v, double z,
                                  const quad::QuadSpec& spec);

/// Heaviside step with theta(0) = 1/2.
inline double step(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

}  // namespace qfric
