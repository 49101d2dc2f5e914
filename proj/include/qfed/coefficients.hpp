#pragma once

#include "qfed/stack.hpp"

#include <array>
#include <vector>

namespace qfed {

enum class FieldKind { electric, magnetic };
enum class Polarization { parallel, perpendicular };

struct InterfaceCoefficients
{
    cplx r;
    cplx t;
};

/// Single-interface coefficients for incidence from medium 1.
/// Throws DegeneracyError when the denominator vanishes.
InterfaceCoefficients fresnel(FieldKind kind, Polarization pol, const OpticalResponse& m1,
                              const OpticalResponse& m2, cplx kz1, cplx kz2);

/// Multi-interface coefficients of one (kind, polarization) channel.
///
/// Layers are 0..N and interface i separates layer i (below) from layer i+1.
/// R[i] is the reflection seen from layer i looking up through interface i
/// (R[N] = 0), Rp[i] the reflection seen from layer i+1 looking down.
struct ChannelCoefficients
{
    std::vector<cplx> r, t, rp, tp; // single interface, size N
    std::vector<cplx> R;            // size N + 1
    std::vector<cplx> Rp;           // size N
    std::vector<cplx> T, Tp;        // size N
    std::vector<cplx> nu;           // size N + 1, 1 for the outer layers
    std::vector<cplx> P;            // size N + 1, exp(i kz d); 0 for the outer layers

    /// Upward reflection inside layer l (zero in the top layer).
    cplx R_above(int l) const { return R[l]; }
    /// Downward reflection inside layer l (zero in the bottom layer).
    cplx R_below(int l) const { return l > 0 ? Rp[l - 1] : cplx{}; }

    /// Transmission from layer lp up to layer l > lp.
    cplx T_cum(int lp, int l) const;
    /// Transmission from layer lp down to layer l < lp.
    cplx Tp_cum(int lp, int l) const;
};

struct StackCoefficients
{
    // index = 2 * kind + pol
    std::array<ChannelCoefficients, 4> channels;

    const ChannelCoefficients& operator()(FieldKind kind, Polarization pol) const
    {
        return channels[2 * static_cast<int>(kind) + static_cast<int>(pol)];
    }
};

ChannelCoefficients channel_coefficients(const SpectralContext& ctx, FieldKind kind,
                                         Polarization pol);

StackCoefficients stack_coefficients(const SpectralContext& ctx);
StackCoefficients stack_coefficients(const LayerStack& stack, double K, double energy,
                                     const Numerics& numerics = {});

} // namespace qfed
