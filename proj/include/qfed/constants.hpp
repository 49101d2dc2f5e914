#pragma once

#include <numbers>

// Unit system used throughout the library:
//   photon energy   eV
//   length          nm
//   wavenumber      nm^-1
// Spectral densities are per unit photon energy (eV^-1) rather than per
// unit angular frequency.
namespace qfed::constants {

inline constexpr double pi = std::numbers::pi;

/// hbar * c in eV nm.
inline constexpr double hbar_c = 197.3269804;

/// hbar in eV s.
inline constexpr double hbar = 6.582119569e-16;

/// Speed of light in nm / s.
inline constexpr double c_light = 2.99792458e17;

/// Boltzmann constant in eV / K.
inline constexpr double k_boltzmann = 8.617333262e-5;

/// Vacuum permittivity in e^2 / (eV nm).
inline constexpr double epsilon0 = 8.8541878128e-12 / 1.602176634e-10;

/// Vacuum permeability in eV / (A^2 nm).
inline constexpr double mu0 = 1.25663706212e-6 / 1.602176634e-10;

/// Free-space wavenumber k0 = E / (hbar c) for a photon energy in eV.
constexpr double wavenumber(double photon_energy_ev) { return photon_energy_ev / hbar_c; }

} // namespace qfed::constants
