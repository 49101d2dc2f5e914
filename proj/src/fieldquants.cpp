#include "qfed/fieldquants.hpp"

#include "qfed/constants.hpp"
#include "qfed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfed {

using constants::k_boltzmann;

double bose_einstein(double energy, double T)
{
    if (!(T >= 0.0))
        throw DomainError("temperature must be >= 0");
    if (T == 0.0)
        return 0.0;
    return 1.0 / std::expm1(energy / (k_boltzmann * T));
}

double eta(const ExcitationRule& rule, double energy)
{
    if (!(energy > 0.0))
        throw DomainError("photon energy must be positive");
    if (const auto* t = std::get_if<Thermal>(&rule))
        return bose_einstein(energy, t->T);
    if (const auto* q = std::get_if<BiasedQW>(&rule)) {
        if (energy < q->Eg)
            return bose_einstein(energy, q->T);
        if (!(energy > q->U)) {
            std::ostringstream msg;
            msg << "biased source at " << energy << " eV with eU = " << q->U
                << " eV: occupation undefined for hbar*omega <= eU";
            throw InversionDomainError(msg.str());
        }
        if (q->T == 0.0)
            return 0.0;
        return 1.0 / std::expm1((energy - q->U) / (k_boltzmann * q->T));
    }
    return std::get<Custom>(rule).eta;
}

std::vector<double> ExcitationProfile::at(double energy) const
{
    std::vector<double> out;
    out.reserve(layers.size());
    for (const auto& r : layers)
        out.push_back(eta(r, energy));
    return out;
}

double effective_temperature(double n, double energy)
{
    if (n < 0.0)
        throw DomainError("photon number must be >= 0");
    if (n == 0.0)
        return 0.0;
    return energy / (k_boltzmann * std::log1p(1.0 / n));
}

namespace {

struct Sums
{
    double num = 0.0, den = 0.0;
    double ratio(const char* what) const
    {
        if (!(den > 0.0))
            throw NoSourcesError(std::string("no sources contribute to the ") + what +
                                 " field; enable the loss floor");
        return num / den;
    }
};

double number_from(const SpectralContext& ctx, const std::vector<LayerIntegrals>& layers,
                   const std::vector<double>& etas, FieldChannel field, double z)
{
    if (etas.size() != layers.size())
        throw DomainError("one photon number per layer required");
    const int l = ctx.locate(z);
    const double we = 0.5 * std::abs(ctx.media[l].epsilon), wm = 0.5 * std::abs(ctx.media[l].mu);
    Sums s;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        double w = 0.0;
        if (field == FieldChannel::electric)
            w = layers[i].electric.value();
        else if (field == FieldChannel::magnetic)
            w = layers[i].magnetic.value();
        else
            w = we * layers[i].electric.value() + wm * layers[i].magnetic.value();
        s.num += w * etas[i];
        s.den += w;
    }
    const char* name = field == FieldChannel::electric
                           ? "electric"
                           : (field == FieldChannel::magnetic ? "magnetic" : "total");
    return s.ratio(name);
}

double flux_from(const SpectralContext& ctx, const std::vector<LayerIntegrals>& layers,
                 const std::vector<double>& etas, double* scale)
{
    // hbar w * (c / n_r) * n_r * E^3/(2 pi^3 (hbar c)^4) * int core eta
    const double pre = ctx.energy * constants::c_light;
    double s = 0.0, m = 0.0;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const double part = pre * layers[i].flux * etas[i];
        s += part;
        m = std::max(m, std::abs(part));
    }
    if (scale)
        *scale = m;
    return s;
}

double emission_from(const SpectralContext& ctx, const LdosValue& rho, double n_e, double n_m,
                     const std::vector<double>& etas, double z)
{
    const int l = ctx.locate(z);
    const double ei = ctx.media[l].epsilon.imag(), mi = ctx.media[l].mu.imag();
    const double pre = ctx.energy * ctx.energy / constants::hbar;
    double q = 0.0;
    if (ei != 0.0)
        q += pre * ei * rho.rho_e * (etas[l] - n_e);
    if (mi != 0.0)
        q += pre * mi * rho.rho_m * (etas[l] - n_m);
    return q;
}

} // namespace

double photon_number(const SpectralContext& ctx, const StackCoefficients& coeffs,
                     const std::vector<double>& etas, FieldChannel field, double z)
{
    return number_from(ctx, source_integrals(ctx, coeffs, z), etas, field, z);
}

double poynting_z(const SpectralContext& ctx, const StackCoefficients& coeffs,
                  const std::vector<double>& etas, double z)
{
    if (etas.size() != ctx.media.size())
        throw DomainError("one photon number per layer required");
    if (std::all_of(etas.begin(), etas.end(), [](double e) { return e == 0.0; }))
        return 0.0;
    return flux_from(ctx, source_integrals(ctx, coeffs, z), etas, nullptr);
}

double net_emission(const SpectralContext& ctx, const StackCoefficients& coeffs,
                    const std::vector<double>& etas, double z)
{
    const int l = ctx.locate(z);
    if (ctx.media[l].epsilon.imag() == 0.0 && ctx.media[l].mu.imag() == 0.0)
        return 0.0;
    const auto layers = source_integrals(ctx, coeffs, z);
    const LdosValue rho = ldos(ctx, coeffs, z);
    const double n_e = ctx.media[l].epsilon.imag() != 0.0
                           ? number_from(ctx, layers, etas, FieldChannel::electric, z)
                           : 0.0;
    const double n_m = ctx.media[l].mu.imag() != 0.0
                           ? number_from(ctx, layers, etas, FieldChannel::magnetic, z)
                           : 0.0;
    return emission_from(ctx, rho, n_e, n_m, etas, z);
}

FieldReport field_report(const SpectralContext& ctx, const StackCoefficients& coeffs,
                         const std::vector<double>& etas, double z)
{
    const auto layers = source_integrals(ctx, coeffs, z);
    FieldReport r;
    r.rho = ldos(ctx, coeffs, z);
    r.n_e = number_from(ctx, layers, etas, FieldChannel::electric, z);
    r.n_m = number_from(ctx, layers, etas, FieldChannel::magnetic, z);
    r.n_tot = number_from(ctx, layers, etas, FieldChannel::total, z);
    r.T_eff_e = effective_temperature(r.n_e, ctx.energy);
    r.T_eff_m = effective_temperature(r.n_m, ctx.energy);
    r.T_eff_tot = effective_temperature(r.n_tot, ctx.energy);
    const double hw = ctx.energy;
    r.E2 = hw / constants::epsilon0 * r.rho.rho_e * (r.n_e + 0.5);
    r.H2 = hw / constants::mu0 * r.rho.rho_m * (r.n_m + 0.5);
    r.u = hw * r.rho.rho_tot * (r.n_tot + 0.5);
    r.S_z = flux_from(ctx, layers, etas, &r.S_scale);
    r.Q = emission_from(ctx, r.rho, r.n_e, r.n_m, etas, z);
    return r;
}

} // namespace qfed
