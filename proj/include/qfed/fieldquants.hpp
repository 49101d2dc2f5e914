#pragma once

#include "qfed/dos.hpp"

#include <variant>
#include <vector>

namespace qfed {

/// Bose-Einstein occupation at temperature T (kelvin).
struct Thermal
{
    double T = 300.0;
};

/// Quasi-equilibrium with chemical potential eU above the gap Eg, thermal below.
struct BiasedQW
{
    double U = 0.0;  // volt
    double T = 300.0;
    double Eg = 0.0; // eV
};

/// Fixed photon number at every energy.
struct Custom
{
    double eta = 0.0;
};

using ExcitationRule = std::variant<Thermal, BiasedQW, Custom>;

double bose_einstein(double energy, double T);

/// Throws InversionDomainError for BiasedQW at hbar*omega <= eU above the gap.
double eta(const ExcitationRule& rule, double energy);

/// One rule per layer.
struct ExcitationProfile
{
    std::vector<ExcitationRule> layers;

    std::vector<double> at(double energy) const;
};

/// Kelvin; n = 0 maps to 0 K. Throws DomainError for n < 0.
double effective_temperature(double n, double energy);

struct FieldReport
{
    LdosValue rho;
    double n_e = 0.0, n_m = 0.0, n_tot = 0.0;
    double T_eff_e = 0.0, T_eff_m = 0.0, T_eff_tot = 0.0;
    double E2 = 0.0; // (hbar w / eps0) rho_e (n_e + 1/2)
    double H2 = 0.0; // (hbar w / mu0) rho_m (n_m + 1/2)
    double u = 0.0;  // hbar w rho_tot (n_tot + 1/2)
    double S_z = 0.0;
    double Q = 0.0;
    /// Largest single-layer contribution to S_z, for judging cancellation.
    double S_scale = 0.0;
};

/// Throws NoSourcesError when the requested denominator vanishes.
double photon_number(const SpectralContext& ctx, const StackCoefficients& coeffs,
                     const std::vector<double>& etas, FieldChannel field, double z);

/// Spectral Poynting z-component in s^-1 per (nm^-1)^2 of K and per eV.
double poynting_z(const SpectralContext& ctx, const StackCoefficients& coeffs,
                  const std::vector<double>& etas, double z);

/// Net emission, s^-1 nm^-1 in the same convention; equals dS_z/dz.
double net_emission(const SpectralContext& ctx, const StackCoefficients& coeffs,
                    const std::vector<double>& etas, double z);

/// Everything at one (z, K, omega) sample from a single pass over the sources.
FieldReport field_report(const SpectralContext& ctx, const StackCoefficients& coeffs,
                         const std::vector<double>& etas, double z);

} // namespace qfed
