#include "qfric/material.hpp"

#include <cmath>

#include "qfric/constants.hpp"

namespace qfric {

using cplx = std::complex<double>;

Material Material::drude(double omega_p, double gamma, std::string label) {
  if (!(omega_p > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("material: omega_p and gamma must be positive");
  Material m;
  m.drude_ = true;
  m.omega_p_ = omega_p;
  m.gamma_ = gamma;
  m.rho_ = gamma / (constants::eps0 * omega_p * omega_p);
  m.label_ = std::move(label);
  return m;
}

Material Material::drude_ev(double omega_p_ev, double gamma_ev, std::string label) {
  return drude(omega_p_ev * constants::ev_to_rad_per_s, gamma_ev * constants::ev_to_rad_per_s, std::move(label));
}

Material Material::ohmic(double rho, double r_real, std::string label) {
  if (!(rho > 0.0)) throw std::invalid_argument("material: rho must be positive");
  Material m;
  m.drude_ = false;
  m.rho_ = rho;
  m.r_real_ = r_real;
  m.label_ = std::move(label);
  return m;
}

cplx Material::permittivity(double omega) const {
  if (!drude_) throw DomainError("permittivity undefined for a material given only by its resistivity", omega);
  if (omega == 0.0) throw DomainError("Drude permittivity has a pole at omega = 0", omega);
  const double w = std::abs(omega);
  const cplx eps = 1.0 - omega_p_ * omega_p_ / (w * cplx(w, gamma_));
  return omega > 0.0 ? eps : std::conj(eps);
}

cplx Material::reflection_p(double omega) const {
  if (!drude_) return {r_real_, 2.0 * constants::eps0 * rho_ * omega};
  const double w = std::abs(omega);
  const double wp2 = omega_p_ * omega_p_;
  const cplx den(wp2 - 2.0 * w * w, -2.0 * gamma_ * w);
  if (den == cplx(0.0, 0.0)) throw DomainError("surface-plasmon pole of the reflection coefficient", omega);
  const cplx r = wp2 / den;
  return omega >= 0.0 ? r : std::conj(r);
}

double Material::ohmic_slope() const { return rho_; }

std::optional<double> Material::plasmon_frequency() const {
  if (!drude_) return std::nullopt;
  return omega_p_ / std::sqrt(2.0);
}

}  // namespace qfric
