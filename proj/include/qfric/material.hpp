#pragma once

#include <complex>
#include <optional>
#include <string>

#include "qfric/errors.hpp"

namespace qfric {

/// Planar surface response. Either a Drude metal (omega_p, gamma) or an ideal
/// Ohmic conductor given directly by its resistivity rho, with
/// r(omega) = r_real + 2 i eps0 rho omega in the latter case.
class Material {
 public:
  /// omega_p and gamma in rad/s.
  static Material drude(double omega_p, double gamma, std::string label = "drude");
  static Material drude_ev(double omega_p_ev, double gamma_ev, std::string label = "drude");
  /// rho in Ohm m.
  static Material ohmic(double rho, double r_real = 1.0, std::string label = "ohmic");

  bool is_drude() const { return drude_; }
  double omega_p() const { return omega_p_; }
  double gamma() const { return gamma_; }
  const std::string& label() const { return label_; }

  /// Drude permittivity; eps(-w) = conj eps(w). Throws DomainError at w = 0 or for Ohmic materials.
  std::complex<double> permittivity(double omega) const;

  /// Quasi-static p-polarised reflection coefficient (eps - 1)/(eps + 1).
  /// For the Drude model this is evaluated as wp^2 / (wp^2 - 2 w^2 - 2 i Gamma w), which is
  /// the same function with the removable singularity at w = 0 cancelled.
  std::complex<double> reflection_p(double omega) const;

  /// Resistivity rho = Gamma / (eps0 wp^2), the low-frequency slope Im r ~ 2 eps0 rho w.
  double ohmic_slope() const;

  /// Surface-plasmon frequency wp / sqrt 2 (Drude only).
  std::optional<double> plasmon_frequency() const;

 private:
  Material() = default;
  bool drude_ = true;
  double omega_p_ = 0.0;
  double gamma_ = 0.0;
  double rho_ = 0.0;
  double r_real_ = 1.0;
  std::string label_;
};

}  // namespace qfric
