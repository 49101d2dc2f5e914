#pragma once

#include "qfed/coefficients.hpp"

#include <array>
#include <vector>

namespace qfed {

using Matrix3 = std::array<std::array<cplx, 3>, 3>;

/// First letter: field at z, second: source at z'.
enum class TensorKind { ee, mm, em, me };

/// Spectral dyadic Green's function in the (K x z, K, z) basis, in nm.
/// The delta(z - z') zz self-term is never included.
struct GreensTensor
{
    Matrix3 m{};
    TensorKind kind = TensorKind::ee;
    bool delta_excluded = true;

    cplx operator()(int i, int j) const { return m[i][j]; }
};

/// Scaled scalar Green's function; sign is +1 or -1.
cplx scalar_xi(const SpectralContext& ctx, const StackCoefficients& coeffs, FieldKind kind,
               Polarization pol, int sign, double z, double zp);

/// (1/kz) d xi / dz with kz taken at z. Throws KinkError when z == zp.
cplx scalar_xi_dz(const SpectralContext& ctx, const StackCoefficients& coeffs, FieldKind kind,
                  Polarization pol, int sign, double z, double zp);

/// Throws KinkError when z == zp (every kind needs a derivative entry there).
GreensTensor greens_tensor(const SpectralContext& ctx, const StackCoefficients& coeffs,
                           TensorKind kind, double z, double zp);

/// Piece of a source layer over which the Green's functions are smooth in z'.
/// lo may be -inf and hi may be +inf in the outer layers.
struct Segment
{
    int layer = 0;
    double lo = 0.0;
    double hi = 0.0;
};

/// Segments of every layer, the layer containing z split at z.
std::vector<Segment> source_segments(const SpectralContext& ctx, double z);

/// On a segment, with k' the source-layer kz,
///   xi(z')      = up  * exp(i k' (z' - lo)) + down  * exp(i k' (hi - z'))
///   dxi/dz (z') = dup * exp(i k' (z' - lo)) + ddown * exp(i k' (hi - z'))
/// The up terms vanish when lo = -inf and the down terms when hi = +inf.
struct XiExpansion
{
    cplx up, down, dup, ddown;
};

/// Which terms to keep. The direct term exp(i k |z - z'|) exists only when z and
/// the segment share a layer; "scattered" is everything else.
enum class XiTerms { all, direct, scattered };

XiExpansion xi_expansion(const SpectralContext& ctx, const ChannelCoefficients& c, int sign,
                         double z, const Segment& seg, XiTerms terms = XiTerms::all);

struct TensorExpansion
{
    Matrix3 up{};
    Matrix3 down{};
};

/// Expansions of all four tensors, indexed by TensorKind.
std::array<TensorExpansion, 4> tensor_expansions(const SpectralContext& ctx,
                                                 const StackCoefficients& coeffs, double z,
                                                 const Segment& seg,
                                                 XiTerms terms = XiTerms::all);

/// Diagonal of g_ee (kind == electric) or g_mm at z' = z; finite at coincidence.
std::array<cplx, 3> coincident_diagonal(const SpectralContext& ctx,
                                        const StackCoefficients& coeffs, FieldKind kind,
                                        double z);

} // namespace qfed
