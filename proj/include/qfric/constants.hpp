#pragma once

// CODATA 2018 values, SI units.
namespace qfric::constants {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double eps0 = 8.8541878128e-12;      // F / m
inline constexpr double e_charge = 1.602176634e-19;   // C
inline constexpr double amu = 1.66053906660e-27;      // kg

// boundary unit conversions
inline constexpr double ev_to_rad_per_s = e_charge / hbar;
inline constexpr double angstrom3 = 1e-30;  // m^3
inline constexpr double nm = 1e-9;
inline constexpr double km_per_s = 1e3;

/// Static polarizability in SI (C^2 m^2 / J) from a volume in Å^3 given in 4πε0 units.
constexpr double alpha_from_A3(double a3) { return 4.0 * pi * eps0 * a3 * angstrom3; }

}  // namespace qfric::constants
