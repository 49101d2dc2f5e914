#pragma once

#include "qfed/greens.hpp"

#include <vector>

namespace qfed {

// Densities are per unit photon energy (eV^-1) and per unit (nm^-1)^2 of in-plane
// wavevector; 2 pi * int rho K dK gives a volume density in eV^-1 nm^-3.

enum class FieldChannel { electric, magnetic, total };

struct NldosKernel
{
    double from_electric = 0.0; // sources proportional to Im eps(z')
    double from_magnetic = 0.0; // sources proportional to Im mu(z')
    double value() const { return from_electric + from_magnetic; }
};

struct LdosValue
{
    double rho_e = 0.0;
    double rho_m = 0.0;
    double rho_tot = 0.0;
};

/// z'-integrals of the kernels over one source layer, with all prefactors applied.
/// flux is the IFDOS integral divided by Re n(z).
struct LayerIntegrals
{
    NldosKernel electric;
    NldosKernel magnetic;
    double flux = 0.0;
};

/// Vacuum DOS at the given photon energy, eV^-1 nm^-3.
double vacuum_dos(double energy);

/// rho * 2 pi k0^2 / vacuum_dos; equals k0 / kz in vacuum.
double normalized_dos(double rho, double energy);

/// Pointwise kernel; z != zp.
NldosKernel nldos(const SpectralContext& ctx, const StackCoefficients& coeffs,
                  FieldChannel field, double z, double zp);

/// Pointwise IFDOS kernel, positive for flow toward +z; z != zp.
double ifdos(const SpectralContext& ctx, const StackCoefficients& coeffs, double z, double zp);

/// Analytic z'-integrals per source layer.
/// Throws TailDivergenceError for a lossy semi-infinite layer without decay.
std::vector<LayerIntegrals> source_integrals(const SpectralContext& ctx,
                                             const StackCoefficients& coeffs, double z);

enum class KernelKind { nldos_e, nldos_m, nldos_tot, ifdos };

/// sum over layers of weight[l] * integral of the kernel over layer l.
double integrate_sources(const SpectralContext& ctx, const StackCoefficients& coeffs,
                         KernelKind kernel, double z, const std::vector<double>& weights);
double integrate_sources(const SpectralContext& ctx, const std::vector<LayerIntegrals>& layers,
                         KernelKind kernel, double z, const std::vector<double>& weights);

LdosValue ldos(const SpectralContext& ctx, const StackCoefficients& coeffs, double z);

/// Largest relative gap between ldos() and the unit-weight source integral over
/// the electric and magnetic channels; 0 when both sides vanish.
double ldos_consistency(const SpectralContext& ctx, const StackCoefficients& coeffs, double z);

/// Closed-form segment integrals, exposed for testing.
/// int |exp(i k x)|^2 dx over [0, L] (L may be +inf).
double integral_abs2(cplx k, double L);
/// int exp(i k x) conj(exp(i k (L - x))) dx over [0, L], L finite.
cplx integral_cross(cplx k, double L);

} // namespace qfed
