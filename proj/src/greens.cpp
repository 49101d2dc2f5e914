#include "qfed/greens.hpp"

#include "qfed/errors.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace qfed {

namespace {

constexpr cplx I{0.0, 1.0};

// Value and z-derivative pair of the (parallel +, perpendicular +, perpendicular -)
// scalar functions needed for one field kind.
struct XiSet
{
    std::array<cplx, 3> v{};
    std::array<cplx, 3> dz{};
};

enum { par_p = 0, perp_p = 1, perp_m = 2 };

// Entries of one tensor as printed, from the scalar functions of both field kinds
// (index 0 electric, 1 magnetic). dz holds raw dxi/dz.
Matrix3 assemble(TensorKind kind, const SpectralContext& ctx, int l, int lp,
                 const std::array<XiSet, 2>& xs)
{
    const cplx kz = ctx.kz[l], kzp = ctx.kz[lp];
    const cplx k = ctx.k(l), kp = ctx.k(lp);
    const double K = ctx.K, k0 = ctx.k0;
    Matrix3 m{};
    switch (kind) {
    case TensorKind::ee:
    case TensorKind::mm: {
        const XiSet& x = xs[kind == TensorKind::ee ? 0 : 1];
        const cplx pre = kind == TensorKind::ee ? ctx.media[lp].mu : ctx.media[lp].epsilon;
        m[0][0] = pre * x.v[par_p];
        m[1][1] = pre * (kz * kzp / (k * kp)) * x.v[perp_p];
        m[1][2] = pre * I * (kz * K / (k * kp)) * x.dz[perp_m] / kz;
        m[2][1] = pre * I * (K * kzp / (k * kp)) * x.dz[perp_p] / kz;
        m[2][2] = pre * (K * K / (k * kp)) * x.v[perp_m];
        break;
    }
    case TensorKind::me:
    case TensorKind::em: {
        const XiSet& x = xs[kind == TensorKind::me ? 0 : 1];
        const cplx pre = kind == TensorKind::me
                             ? ctx.media[lp].mu / ctx.media[l].mu
                             : -ctx.media[lp].epsilon / ctx.media[l].epsilon;
        m[0][1] = -pre * (kzp * k / (kz * kp)) * x.dz[perp_p] / k0;
        m[0][2] = pre * I * (K * k / (k0 * kp)) * x.v[perp_m];
        m[1][0] = pre * x.dz[par_p] / k0;
        m[2][0] = -pre * I * (K / k0) * x.v[par_p];
        break;
    }
    }
    return m;
}

[[maybe_unused]] bool sparsity_ok(TensorKind kind, const Matrix3& m)
{
    const bool diag_kind = kind == TensorKind::ee || kind == TensorKind::mm;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            bool allowed;
            if (diag_kind)
                allowed = (i == 0 && j == 0) || (i > 0 && j > 0);
            else
                allowed = (i == 0) != (j == 0);
            if (!allowed && m[i][j] != cplx{})
                return false;
        }
    return true;
}

struct PointXi
{
    cplx value;
    cplx dz; // raw derivative
};

// Direct transcription of the three layer cases.
PointXi xi_point(const SpectralContext& ctx, const ChannelCoefficients& c, int s, double z,
                 double zp, bool want_dz)
{
    const int N = ctx.N();
    const int l = ctx.locate(z), lp = ctx.locate(zp);
    const cplx kp = ctx.kz[lp];
    const cplx pre = I / (2.0 * kp);
    cplx val{}, der{};
    auto add = [&](cplx a, cplx phase, cplx slope) {
        const cplx e = a * std::exp(phase);
        val += e;
        der += slope * e;
    };

    if (l == lp) {
        const cplx k = kp;
        const cplx nu = c.nu[l];
        const double sg = z > zp ? 1.0 : (z < zp ? -1.0 : 0.0);
        add(1.0, I * k * std::abs(z - zp), I * k * sg);
        if (l < N) {
            const double B = ctx.interfaces[l];
            add(double(s) * nu * c.R[l], -I * k * (z + zp - 2.0 * B), -I * k);
        }
        if (l > 0) {
            const double A = ctx.interfaces[l - 1];
            add(double(s) * nu * c.R_below(l), I * k * (z + zp - 2.0 * A), I * k);
        }
        if (ctx.interior(l)) {
            const double d = ctx.thickness(l);
            const cplx RR = nu * c.R[l] * c.R_below(l);
            add(RR, -I * k * (z - zp - 2.0 * d), -I * k);
            add(RR, I * k * (z - zp + 2.0 * d), I * k);
        }
        if (want_dz && sg == 0.0)
            throw KinkError("z-derivative of the scalar Green's function at z = z'");
        return {pre * val, pre * der};
    }

    const cplx k = ctx.kz[l];
    if (l > lp) {
        const double Bp = ctx.interfaces[lp];
        cplx S = std::exp(I * kp * (Bp - zp));
        if (lp > 0) {
            const double Ap = ctx.interfaces[lp - 1], dp = ctx.thickness(lp);
            S += double(s) * c.nu[lp] * c.R_below(lp) *
                 (std::exp(I * kp * (zp + dp - Ap)) +
                  double(s) * c.R[lp] * std::exp(I * kp * (2.0 * dp - zp + Bp)));
        }
        const double A = ctx.interfaces[l - 1];
        add(1.0, I * k * (z - A), I * k);
        if (l < N) {
            const double d = ctx.thickness(l);
            add(double(s) * c.R[l], -I * k * (z - A - 2.0 * d), -I * k);
        }
        const cplx f = pre * c.T_cum(lp, l) * S;
        return {f * val, f * der};
    }

    const double Ap = ctx.interfaces[lp - 1];
    cplx S = std::exp(I * kp * (zp - Ap));
    if (lp < N) {
        const double dp = ctx.thickness(lp);
        S += double(s) * c.nu[lp] * c.R[lp] *
             (std::exp(-I * kp * (zp - 2.0 * dp - Ap)) +
              double(s) * c.R_below(lp) * std::exp(I * kp * (zp + 2.0 * dp - Ap)));
    }
    const double B = ctx.interfaces[l];
    add(1.0, -I * k * (z - B), -I * k);
    if (l > 0) {
        const double A = ctx.interfaces[l - 1], d = ctx.thickness(l);
        add(double(s) * c.R_below(l), I * k * (z + d - A), I * k);
    }
    const cplx f = pre * c.Tp_cum(lp, l) * S;
    return {f * val, f * der};
}

} // namespace

cplx scalar_xi(const SpectralContext& ctx, const StackCoefficients& coeffs, FieldKind kind,
               Polarization pol, int sign, double z, double zp)
{
    return xi_point(ctx, coeffs(kind, pol), sign, z, zp, false).value;
}

cplx scalar_xi_dz(const SpectralContext& ctx, const StackCoefficients& coeffs, FieldKind kind,
                  Polarization pol, int sign, double z, double zp)
{
    return xi_point(ctx, coeffs(kind, pol), sign, z, zp, true).dz / ctx.kz[ctx.locate(z)];
}

GreensTensor greens_tensor(const SpectralContext& ctx, const StackCoefficients& coeffs,
                           TensorKind kind, double z, double zp)
{
    std::array<XiSet, 2> xs;
    for (int f = 0; f < 2; ++f) {
        const auto fk = static_cast<FieldKind>(f);
        const auto p0 = xi_point(ctx, coeffs(fk, Polarization::parallel), 1, z, zp, true);
        const auto p1 = xi_point(ctx, coeffs(fk, Polarization::perpendicular), 1, z, zp, true);
        const auto p2 = xi_point(ctx, coeffs(fk, Polarization::perpendicular), -1, z, zp, true);
        xs[f].v = {p0.value, p1.value, p2.value};
        xs[f].dz = {p0.dz, p1.dz, p2.dz};
    }
    GreensTensor g;
    g.kind = kind;
    g.m = assemble(kind, ctx, ctx.locate(z), ctx.locate(zp), xs);
    assert(sparsity_ok(kind, g.m));
    return g;
}

std::vector<Segment> source_segments(const SpectralContext& ctx, double z)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const int N = ctx.N();
    const int lz = ctx.locate(z);
    std::vector<Segment> out;
    for (int l = 0; l <= N; ++l) {
        const double lo = l > 0 ? ctx.interfaces[l - 1] : -inf;
        const double hi = l < N ? ctx.interfaces[l] : inf;
        if (l == lz) {
            out.push_back({l, lo, z});
            out.push_back({l, z, hi});
        } else {
            out.push_back({l, lo, hi});
        }
    }
    return out;
}

XiExpansion xi_expansion(const SpectralContext& ctx, const ChannelCoefficients& c, int sign,
                         double z, const Segment& seg, XiTerms terms)
{
    const int N = ctx.N();
    const int l = ctx.locate(z), lp = seg.layer;
    const double s = sign;
    const cplx kp = ctx.kz[lp];
    const cplx pre = I / (2.0 * kp);
    XiExpansion x{};

    if (l != lp && terms == XiTerms::direct)
        return x;

    if (l == lp) {
        const cplx k = kp;
        const cplx nu = c.nu[l];
        const bool below = seg.hi <= z;
        if (terms != XiTerms::scattered) {
            if (below) {
                x.down += 1.0;
                x.ddown += I * k;
            } else {
                x.up += 1.0;
                x.dup -= I * k;
            }
        }
        if (terms == XiTerms::direct) {
            x.up *= pre;
            x.down *= pre;
            x.dup *= pre;
            x.ddown *= pre;
            return x;
        }
        // layer-referenced exponentials exp(ik(B - z')) and exp(ik(z' - A)) rebased
        // onto the segment ends
        cplx eB{}, rebD{}, eA{}, rebU{};
        if (l < N) {
            const double B = ctx.interfaces[l];
            eB = std::exp(I * k * (B - z));
            rebD = std::exp(I * k * (B - seg.hi));
            const cplx a = s * nu * c.R[l] * eB * rebD;
            x.down += a;
            x.ddown -= I * k * a;
        }
        if (l > 0) {
            const double A = ctx.interfaces[l - 1];
            eA = std::exp(I * k * (z - A));
            rebU = std::exp(I * k * (seg.lo - A));
            const cplx a = s * nu * c.R_below(l) * eA * rebU;
            x.up += a;
            x.dup += I * k * a;
        }
        if (ctx.interior(l)) {
            const cplx RR = nu * c.R[l] * c.R_below(l) * c.P[l];
            const cplx a = RR * eB * rebU;
            x.up += a;
            x.dup -= I * k * a;
            const cplx b = RR * eA * rebD;
            x.down += b;
            x.ddown += I * k * b;
        }
    } else {
        // source factor S(z') = Su U + Sd D over the whole layer lp, field factor F(z)
        cplx Su{}, Sd{}, T{}, f{}, df{};
        const cplx k = ctx.kz[l];
        if (l > lp) {
            Sd = 1.0;
            if (lp > 0) {
                const cplx nu = c.nu[lp], P = c.P[lp];
                Sd += nu * c.R_below(lp) * c.R[lp] * P * P;
                Su = s * nu * c.R_below(lp) * P;
            }
            T = c.T_cum(lp, l);
            const double A = ctx.interfaces[l - 1];
            f = std::exp(I * k * (z - A));
            df = I * k * f;
            if (l < N) {
                const double B = ctx.interfaces[l];
                const cplx g = s * c.R[l] * std::exp(I * k * (B - z)) * c.P[l];
                f += g;
                df -= I * k * g;
            }
        } else {
            Su = 1.0;
            if (lp < N) {
                const cplx nu = c.nu[lp], P = c.P[lp];
                Su += nu * c.R[lp] * c.R_below(lp) * P * P;
                Sd = s * nu * c.R[lp] * P;
            }
            T = c.Tp_cum(lp, l);
            const double B = ctx.interfaces[l];
            f = std::exp(I * k * (B - z));
            df = -I * k * f;
            if (l > 0) {
                const double A = ctx.interfaces[l - 1];
                const cplx g = s * c.R_below(l) * c.P[l] * std::exp(I * k * (z - A));
                f += g;
                df += I * k * g;
            }
        }
        x.up = Su * f;
        x.dup = Su * df;
        x.down = Sd * f;
        x.ddown = Sd * df;
        x.up *= T;
        x.dup *= T;
        x.down *= T;
        x.ddown *= T;
    }
    x.up *= pre;
    x.down *= pre;
    x.dup *= pre;
    x.ddown *= pre;
    return x;
}

std::array<TensorExpansion, 4> tensor_expansions(const SpectralContext& ctx,
                                                 const StackCoefficients& coeffs, double z,
                                                 const Segment& seg, XiTerms terms)
{
    std::array<XiSet, 2> ups, downs;
    for (int f = 0; f < 2; ++f) {
        const auto fk = static_cast<FieldKind>(f);
        const XiExpansion e[3] = {
            xi_expansion(ctx, coeffs(fk, Polarization::parallel), 1, z, seg, terms),
            xi_expansion(ctx, coeffs(fk, Polarization::perpendicular), 1, z, seg, terms),
            xi_expansion(ctx, coeffs(fk, Polarization::perpendicular), -1, z, seg, terms),
        };
        for (int i = 0; i < 3; ++i) {
            ups[f].v[i] = e[i].up;
            ups[f].dz[i] = e[i].dup;
            downs[f].v[i] = e[i].down;
            downs[f].dz[i] = e[i].ddown;
        }
    }
    const int l = ctx.locate(z);
    std::array<TensorExpansion, 4> out;
    for (int t = 0; t < 4; ++t) {
        const auto kind = static_cast<TensorKind>(t);
        out[t].up = assemble(kind, ctx, l, seg.layer, ups);
        out[t].down = assemble(kind, ctx, l, seg.layer, downs);
    }
    return out;
}

std::array<cplx, 3> coincident_diagonal(const SpectralContext& ctx,
                                        const StackCoefficients& coeffs, FieldKind kind,
                                        double z)
{
    const int l = ctx.locate(z);
    const cplx xpar = scalar_xi(ctx, coeffs, kind, Polarization::parallel, 1, z, z);
    const cplx xpp = scalar_xi(ctx, coeffs, kind, Polarization::perpendicular, 1, z, z);
    const cplx xpm = scalar_xi(ctx, coeffs, kind, Polarization::perpendicular, -1, z, z);
    const cplx kz = ctx.kz[l], k = ctx.k(l);
    const cplx pre = kind == FieldKind::electric ? ctx.media[l].mu : ctx.media[l].epsilon;
    return {pre * xpar, pre * (kz * kz / (k * k)) * xpp, pre * (ctx.K * ctx.K / (k * k)) * xpm};
}

} // namespace qfed
