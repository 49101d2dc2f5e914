#include "qfed/coefficients.hpp"

#include "qfed/errors.hpp"

namespace qfed {

namespace {

cplx checked_div(cplx num, cplx den, const char* what)
{
    if (den == cplx{})
        throw DegeneracyError(std::string("vanishing denominator in ") + what);
    return num / den;
}

} // namespace

InterfaceCoefficients fresnel(FieldKind kind, Polarization pol, const OpticalResponse& m1,
                              const OpticalResponse& m2, cplx kz1, cplx kz2)
{
    const cplx e1 = m1.epsilon, e2 = m2.epsilon, u1 = m1.mu, u2 = m2.mu;
    const cplx n2 = m2.index;
    // the mu-weighted and eps-weighted denominators
    const cplx dmu = u2 * kz1 + u1 * kz2;
    const cplx deps = e2 * kz1 + e1 * kz2;

    if (kind == FieldKind::electric && pol == Polarization::parallel)
        return {checked_div(u2 * kz1 - u1 * kz2, dmu, "fresnel"),
                checked_div(2.0 * u2 * kz1, dmu, "fresnel")};
    if (kind == FieldKind::electric)
        return {checked_div(e1 * kz2 - e2 * kz1, deps, "fresnel"),
                checked_div(2.0 * std::sqrt(e1 / u1) * n2 * kz1, deps, "fresnel")};
    if (pol == Polarization::parallel)
        return {checked_div(e2 * kz1 - e1 * kz2, deps, "fresnel"),
                checked_div(2.0 * e2 * kz1, deps, "fresnel")};
    return {checked_div(u1 * kz2 - u2 * kz1, dmu, "fresnel"),
            checked_div(2.0 * std::sqrt(u1 / e1) * n2 * kz1, dmu, "fresnel")};
}

cplx ChannelCoefficients::T_cum(int lp, int l) const
{
    cplx v = T[lp];
    for (int m = lp + 1; m < l; ++m)
        v *= T[m] * P[m];
    return v;
}

cplx ChannelCoefficients::Tp_cum(int lp, int l) const
{
    cplx v = Tp[lp - 1];
    for (int m = lp - 2; m >= l; --m)
        v *= Tp[m] * P[m + 1];
    return v;
}

ChannelCoefficients channel_coefficients(const SpectralContext& ctx, FieldKind kind,
                                         Polarization pol)
{
    const int N = ctx.N();
    ChannelCoefficients c;
    c.r.resize(N);
    c.t.resize(N);
    c.rp.resize(N);
    c.tp.resize(N);
    for (int i = 0; i < N; ++i) {
        auto fw = fresnel(kind, pol, ctx.media[i], ctx.media[i + 1], ctx.kz[i], ctx.kz[i + 1]);
        auto bw = fresnel(kind, pol, ctx.media[i + 1], ctx.media[i], ctx.kz[i + 1], ctx.kz[i]);
        c.r[i] = fw.r;
        c.t[i] = fw.t;
        c.rp[i] = bw.r;
        c.tp[i] = bw.t;
    }

    c.P.assign(N + 1, cplx{});
    std::vector<cplx> P2(N + 1, cplx{});
    for (int l = 1; l < N; ++l) {
        c.P[l] = std::exp(cplx(0.0, 1.0) * ctx.kz[l] * ctx.thickness(l));
        P2[l] = c.P[l] * c.P[l];
    }

    c.R.assign(N + 1, cplx{});
    for (int i = N - 1; i >= 0; --i) {
        const cplx x = c.R[i + 1] * P2[i + 1];
        c.R[i] = checked_div(c.r[i] + x, 1.0 + c.r[i] * x, "upward reflection recursion");
    }

    c.Rp.assign(N, cplx{});
    for (int i = 0; i < N; ++i) {
        const cplx x = (i > 0 ? c.Rp[i - 1] : cplx{}) * P2[i];
        c.Rp[i] = checked_div(c.rp[i] + x, 1.0 + c.rp[i] * x, "downward reflection recursion");
    }

    c.nu.assign(N + 1, cplx(1.0));
    for (int l = 1; l < N; ++l)
        c.nu[l] = checked_div(1.0, 1.0 - c.Rp[l - 1] * c.R[l] * P2[l], "resonance factor");

    c.T.resize(N);
    c.Tp.resize(N);
    for (int i = 0; i < N; ++i) {
        const cplx den = 1.0 - c.R_below(i) * c.r[i] * P2[i];
        c.T[i] = checked_div(c.t[i] * c.nu[i + 1], c.nu[i] * den, "transmission");
        const cplx denp = 1.0 - c.R[i + 1] * c.rp[i] * P2[i + 1];
        c.Tp[i] = checked_div(c.tp[i] * c.nu[i], c.nu[i + 1] * denp, "transmission");
    }
    return c;
}

StackCoefficients stack_coefficients(const SpectralContext& ctx)
{
    StackCoefficients out;
    for (int kind = 0; kind < 2; ++kind)
        for (int pol = 0; pol < 2; ++pol)
            out.channels[2 * kind + pol] = channel_coefficients(
                ctx, static_cast<FieldKind>(kind), static_cast<Polarization>(pol));
    return out;
}

StackCoefficients stack_coefficients(const LayerStack& stack, double K, double energy,
                                     const Numerics& numerics)
{
    return stack_coefficients(make_context(stack, K, energy, numerics));
}

} // namespace qfed
