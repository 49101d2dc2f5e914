#include "qfed/stack.hpp"

#include "qfed/constants.hpp"
#include "qfed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfed {

int locate_layer(const std::vector<double>& interfaces, double z)
{
    auto it = std::lower_bound(interfaces.begin(), interfaces.end(), z);
    return static_cast<int>(it - interfaces.begin());
}

LayerStack::LayerStack(std::vector<Layer> layers, std::vector<double> interfaces)
    : m_layers(std::move(layers)), m_interfaces(std::move(interfaces))
{
    std::vector<std::string> problems;
    if (m_layers.size() != m_interfaces.size() + 1)
        problems.push_back("layer count must equal interface count + 1");
    for (std::size_t i = 1; i < m_interfaces.size(); ++i) {
        const double d = m_interfaces[i] - m_interfaces[i - 1];
        if (!(d >= min_layer_thickness)) {
            std::ostringstream msg;
            msg << "layer " << i << " thickness " << d << " nm is below the minimum "
                << min_layer_thickness << " nm (interfaces must be strictly increasing)";
            problems.push_back(msg.str());
        }
    }
    for (double z : m_interfaces)
        if (!std::isfinite(z))
            problems.push_back("interface position must be finite");
    for (std::size_t l = 0; l < m_layers.size(); ++l)
        for (auto& p : check_model(m_layers[l].material))
            problems.push_back("layer " + std::to_string(l) + ": " + p);
    if (!problems.empty())
        throw ValidationError(std::move(problems));
}

double LayerStack::thickness(int l) const
{
    if (l <= 0 || l >= static_cast<int>(m_interfaces.size()))
        throw DomainError("thickness is defined for interior layers only");
    return m_interfaces[l] - m_interfaces[l - 1];
}

LayerStack LayerStack::mirrored(double offset) const
{
    std::vector<Layer> layers(m_layers.rbegin(), m_layers.rend());
    std::vector<double> zs;
    for (auto it = m_interfaces.rbegin(); it != m_interfaces.rend(); ++it)
        zs.push_back(offset - *it);
    return LayerStack(std::move(layers), std::move(zs));
}

cplx kz_from(double k0, cplx n, double K)
{
    return sqrt_upper(k0 * k0 * n * n - K * K);
}

cplx kz_in_layer(const LayerStack& stack, int layer, double K, double energy)
{
    const OpticalResponse r = evaluate(stack.layer(layer).material, energy);
    return kz_from(constants::wavenumber(energy), r.index, K);
}

void SpectralContext::update_kz()
{
    kz.resize(media.size());
    for (std::size_t l = 0; l < media.size(); ++l)
        kz[l] = kz_from(k0, media[l].index, K);
}

namespace {

// |k0^2 n^2 - K^2| below this counts as sitting on a light line.
constexpr double branch_tolerance = 1e-24;
constexpr double nudge_factor = 1.0 + 1e-9;

bool near_branch_point(const SpectralContext& ctx)
{
    for (const auto& m : ctx.media)
        if (std::abs(ctx.k0 * ctx.k0 * m.index * m.index - ctx.K * ctx.K) < branch_tolerance)
            return true;
    return false;
}

} // namespace

SpectralContext make_context(const LayerStack& stack, double K, double energy,
                             const Numerics& numerics)
{
    if (!(K >= 0.0))
        throw DomainError("in-plane wavenumber must be >= 0");
    SpectralContext ctx;
    ctx.interfaces = stack.interfaces();
    ctx.energy = energy;
    ctx.k0 = constants::wavenumber(energy);
    ctx.K = K;
    ctx.media.reserve(stack.layer_count());
    for (const auto& layer : stack.layers()) {
        OpticalResponse r = evaluate(layer.material, energy);
        if (r.epsilon.imag() < numerics.loss_floor) {
            r = OpticalResponse::from_epsilon({r.epsilon.real(), numerics.loss_floor}, r.mu);
            ctx.floor_applied = true;
        }
        ctx.media.push_back(r);
    }
    if (numerics.branch_nudge && near_branch_point(ctx)) {
        ctx.K *= nudge_factor;
        ctx.nudged = true;
    }
    ctx.update_kz();
    return ctx;
}

SpectralContext make_context(std::vector<double> interfaces, std::vector<OpticalResponse> media,
                             double K, double energy)
{
    if (media.size() != interfaces.size() + 1)
        throw DomainError("media count must equal interface count + 1");
    SpectralContext ctx;
    ctx.interfaces = std::move(interfaces);
    ctx.media = std::move(media);
    ctx.energy = energy;
    ctx.k0 = constants::wavenumber(energy);
    ctx.K = K;
    ctx.update_kz();
    return ctx;
}

} // namespace qfed
