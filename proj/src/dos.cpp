#include "qfed/dos.hpp"

#include "qfed/constants.hpp"
#include "qfed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qfed {

namespace {

using constants::hbar_c;
using constants::pi;

constexpr double inf = std::numeric_limits<double>::infinity();

// E^3 / (2 pi^3 (hbar c)^4)
double kernel_prefactor(double energy)
{
    return energy * energy * energy / (2.0 * pi * pi * pi * std::pow(hbar_c, 4));
}

// E / (2 pi^3 (hbar c)^2)
double ldos_prefactor(double energy)
{
    return energy / (2.0 * pi * pi * pi * hbar_c * hbar_c);
}

cplx expm1(cplx w)
{
    const double a = w.real(), b = w.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// expm1(w) / w
cplx phi(cplx w)
{
    if (w == cplx{})
        return 1.0;
    return expm1(w) / w;
}

double sum_abs2(const Matrix3& m)
{
    double s = 0.0;
    for (const auto& row : m)
        for (const auto& v : row)
            s += std::norm(v);
    return s;
}

// Integrals of the segment basis products.
struct Basis
{
    double uu = 0.0; // int |U|^2 = int |D|^2
    cplx ud;         // int U conj(D)
};

// int (a_u U + a_d D) conj(b_u U + b_d D)
cplx pair_integral(cplx au, cplx ad, cplx bu, cplx bd, const Basis& b)
{
    return (au * std::conj(bu) + ad * std::conj(bd)) * b.uu + au * std::conj(bd) * b.ud +
           ad * std::conj(bu) * std::conj(b.ud);
}

double abs2_integral(const Matrix3& up, const Matrix3& down, const Basis& b)
{
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s += pair_integral(up[i][j], down[i][j], up[i][j], down[i][j], b).real();
    return s;
}

// Im of int [a11 b21* - a22 b12* - a23 b13*]
double flux_integral(const TensorExpansion& a, const TensorExpansion& b, const Basis& basis)
{
    auto term = [&](int i, int j, int p, int q) {
        return pair_integral(a.up[i][j], a.down[i][j], b.up[p][q], b.down[p][q], basis);
    };
    return (term(0, 0, 1, 0) - term(1, 1, 0, 1) - term(1, 2, 0, 2)).imag();
}

double flux_point(const Matrix3& a, const Matrix3& b)
{
    return (a[0][0] * std::conj(b[1][0]) - a[1][1] * std::conj(b[0][1]) -
            a[1][2] * std::conj(b[0][2]))
        .imag();
}

// int_{L2}^{L1} exp(-2 kappa x) dx; either length may be infinite
double tail_gap(double kappa, double L1, double L2)
{
    if (L1 == L2)
        return 0.0;
    const double a = std::min(L1, L2), b = std::max(L1, L2);
    const double v = std::isinf(b) ? std::exp(-2.0 * kappa * a) / (2.0 * kappa)
                                   : std::exp(-2.0 * kappa * a) * (b - a) *
                                         phi(cplx(-2.0 * kappa * (b - a), 0.0)).real();
    return L1 > L2 ? v : -v;
}

// Flux integral of the field-layer segment without its direct-direct part.
double scattered_flux(const TensorExpansion& as, const TensorExpansion& ad,
                      const TensorExpansion& bs, const TensorExpansion& bd, const Basis& basis)
{
    return flux_integral(as, bs, basis) + flux_integral(as, bd, basis) +
           flux_integral(ad, bs, basis);
}

bool is_zero(const Matrix3& m)
{
    for (const auto& row : m)
        for (const auto& v : row)
            if (v != cplx{})
                return false;
    return true;
}

} // namespace

double integral_abs2(cplx k, double L)
{
    const double kappa = k.imag();
    if (std::isinf(L)) {
        if (!(kappa > 0.0))
            throw TailDivergenceError(
                "semi-infinite source layer has no decay; set a nonzero loss floor");
        return 0.5 / kappa;
    }
    return L * phi(cplx(-2.0 * kappa * L, 0.0)).real();
}

cplx integral_cross(cplx k, double L)
{
    return std::exp(-cplx(0.0, 1.0) * std::conj(k) * L) * L * phi(cplx(0.0, 2.0 * k.real() * L));
}

double vacuum_dos(double energy)
{
    return energy * energy / (pi * pi * hbar_c * hbar_c * hbar_c);
}

double normalized_dos(double rho, double energy)
{
    const double k0 = constants::wavenumber(energy);
    return rho * 2.0 * pi * k0 * k0 / vacuum_dos(energy);
}

NldosKernel nldos(const SpectralContext& ctx, const StackCoefficients& coeffs,
                  FieldChannel field, double z, double zp)
{
    const int lp = ctx.locate(zp);
    const double ei = ctx.media[lp].epsilon.imag(), mi = ctx.media[lp].mu.imag();
    const double pre = kernel_prefactor(ctx.energy);
    auto one = [&](TensorKind from_e, TensorKind from_m) {
        NldosKernel k;
        if (ei != 0.0)
            k.from_electric = pre * ei * sum_abs2(greens_tensor(ctx, coeffs, from_e, z, zp).m);
        if (mi != 0.0)
            k.from_magnetic = pre * mi * sum_abs2(greens_tensor(ctx, coeffs, from_m, z, zp).m);
        return k;
    };
    if (field == FieldChannel::electric)
        return one(TensorKind::ee, TensorKind::em);
    if (field == FieldChannel::magnetic)
        return one(TensorKind::me, TensorKind::mm);
    const int l = ctx.locate(z);
    const NldosKernel e = one(TensorKind::ee, TensorKind::em);
    const NldosKernel m = one(TensorKind::me, TensorKind::mm);
    const double we = 0.5 * std::abs(ctx.media[l].epsilon), wm = 0.5 * std::abs(ctx.media[l].mu);
    return {we * e.from_electric + wm * m.from_electric,
            we * e.from_magnetic + wm * m.from_magnetic};
}

double ifdos(const SpectralContext& ctx, const StackCoefficients& coeffs, double z, double zp)
{
    const int l = ctx.locate(z), lp = ctx.locate(zp);
    const double ei = ctx.media[lp].epsilon.imag(), mi = ctx.media[lp].mu.imag();
    double core = 0.0;
    if (mi != 0.0)
        core += mi * flux_point(greens_tensor(ctx, coeffs, TensorKind::mm, z, zp).m,
                                greens_tensor(ctx, coeffs, TensorKind::em, z, zp).m);
    if (ei != 0.0)
        core -= ei * flux_point(greens_tensor(ctx, coeffs, TensorKind::ee, z, zp).m,
                                greens_tensor(ctx, coeffs, TensorKind::me, z, zp).m);
    return kernel_prefactor(ctx.energy) * ctx.media[l].index.real() * core;
}

std::vector<LayerIntegrals> source_integrals(const SpectralContext& ctx,
                                             const StackCoefficients& coeffs, double z)
{
    const double pre = kernel_prefactor(ctx.energy);
    const int lz = ctx.locate(z);
    std::vector<LayerIntegrals> out(ctx.media.size());
    for (const Segment& seg : source_segments(ctx, z)) {
        const int lp = seg.layer;
        const double ei = ctx.media[lp].epsilon.imag(), mi = ctx.media[lp].mu.imag();
        if (ei == 0.0 && mi == 0.0)
            continue;
        const double L = seg.hi - seg.lo;
        if (L == 0.0)
            continue;
        const auto t = tensor_expansions(ctx, coeffs, z, seg);
        const auto& ee = t[static_cast<int>(TensorKind::ee)];
        const auto& mm = t[static_cast<int>(TensorKind::mm)];
        const auto& em = t[static_cast<int>(TensorKind::em)];
        const auto& me = t[static_cast<int>(TensorKind::me)];

        const cplx kp = ctx.kz[lp];
        Basis b;
        if (std::isinf(L)) {
            // only one of U, D exists on a semi-infinite segment
            bool any = false;
            for (const auto* e : {&ee, &mm, &em, &me})
                any = any || !is_zero(e->up) || !is_zero(e->down);
            if (!any)
                continue;
            b.uu = integral_abs2(kp, L);
        } else {
            b.uu = integral_abs2(kp, L);
            b.ud = integral_cross(kp, L);
        }

        LayerIntegrals& acc = out[lp];
        if (ei != 0.0) {
            acc.electric.from_electric += pre * ei * abs2_integral(ee.up, ee.down, b);
            acc.magnetic.from_electric += pre * ei * abs2_integral(me.up, me.down, b);
        }
        if (mi != 0.0) {
            acc.electric.from_magnetic += pre * mi * abs2_integral(em.up, em.down, b);
            acc.magnetic.from_magnetic += pre * mi * abs2_integral(mm.up, mm.down, b);
        }

        if (lp != lz) {
            if (ei != 0.0)
                acc.flux -= pre * ei * flux_integral(ee, me, b);
            if (mi != 0.0)
                acc.flux += pre * mi * flux_integral(mm, em, b);
            continue;
        }
        // In the field layer the direct term alone carries a flux that cancels
        // between the two sides of z up to the length difference of the two
        // segments. Summing the two sides numerically would bury everything the
        // reflections contribute far from the interfaces, so the direct-direct
        // part is added once, in closed form, with the lower segment.
        const auto ts = tensor_expansions(ctx, coeffs, z, seg, XiTerms::scattered);
        const auto td = tensor_expansions(ctx, coeffs, z, seg, XiTerms::direct);
        auto at = [](const std::array<TensorExpansion, 4>& t, TensorKind k) -> const TensorExpansion& {
            return t[static_cast<int>(k)];
        };
        using TK = TensorKind;
        if (ei != 0.0)
            acc.flux -= pre * ei *
                        scattered_flux(at(ts, TK::ee), at(td, TK::ee), at(ts, TK::me), at(td, TK::me), b);
        if (mi != 0.0)
            acc.flux += pre * mi *
                        scattered_flux(at(ts, TK::mm), at(td, TK::mm), at(ts, TK::em), at(td, TK::em), b);
        if (seg.hi == z) {
            const double below = z - seg.lo;
            const double above = (lz < ctx.N() ? ctx.interfaces[lz] : inf) - z;
            const double gap = tail_gap(kp.imag(), below, above);
            const Basis unit{1.0, cplx{}};
            if (ei != 0.0)
                acc.flux -= pre * ei * gap * flux_integral(at(td, TK::ee), at(td, TK::me), unit);
            if (mi != 0.0)
                acc.flux += pre * mi * gap * flux_integral(at(td, TK::mm), at(td, TK::em), unit);
        }
    }
    return out;
}

double integrate_sources(const SpectralContext& ctx, const std::vector<LayerIntegrals>& layers,
                         KernelKind kernel, double z, const std::vector<double>& weights)
{
    if (weights.size() != layers.size())
        throw DomainError("one weight per layer required");
    const int l = ctx.locate(z);
    const double we = 0.5 * std::abs(ctx.media[l].epsilon), wm = 0.5 * std::abs(ctx.media[l].mu);
    const double nr = ctx.media[l].index.real();
    double s = 0.0;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& li = layers[i];
        double v = 0.0;
        switch (kernel) {
        case KernelKind::nldos_e: v = li.electric.value(); break;
        case KernelKind::nldos_m: v = li.magnetic.value(); break;
        case KernelKind::nldos_tot: v = we * li.electric.value() + wm * li.magnetic.value(); break;
        case KernelKind::ifdos: v = nr * li.flux; break;
        }
        s += weights[i] * v;
    }
    return s;
}

double integrate_sources(const SpectralContext& ctx, const StackCoefficients& coeffs,
                         KernelKind kernel, double z, const std::vector<double>& weights)
{
    return integrate_sources(ctx, source_integrals(ctx, coeffs, z), kernel, z, weights);
}

LdosValue ldos(const SpectralContext& ctx, const StackCoefficients& coeffs, double z)
{
    const int l = ctx.locate(z);
    const cplx eps = ctx.media[l].epsilon, mu = ctx.media[l].mu;
    const double pre = ldos_prefactor(ctx.energy);
    auto trace = [&](FieldKind kind, cplx w) {
        const auto d = coincident_diagonal(ctx, coeffs, kind, z);
        return pre * (d[0] + d[1] + w * w / std::norm(w) * d[2]).imag();
    };
    LdosValue v;
    v.rho_e = trace(FieldKind::electric, eps);
    v.rho_m = trace(FieldKind::magnetic, mu);
    v.rho_tot = 0.5 * std::abs(eps) * v.rho_e + 0.5 * std::abs(mu) * v.rho_m;
    return v;
}

double ldos_consistency(const SpectralContext& ctx, const StackCoefficients& coeffs, double z)
{
    const LdosValue direct = ldos(ctx, coeffs, z);
    const auto layers = source_integrals(ctx, coeffs, z);
    const std::vector<double> ones(layers.size(), 1.0);
    auto rel = [](double a, double b) {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
    };
    return std::max(rel(direct.rho_e, integrate_sources(ctx, layers, KernelKind::nldos_e, z, ones)),
                    rel(direct.rho_m, integrate_sources(ctx, layers, KernelKind::nldos_m, z, ones)));
}

} // namespace qfed
