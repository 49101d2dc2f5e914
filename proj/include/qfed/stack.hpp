#pragma once

#include "qfed/materials.hpp"

#include <string>
#include <vector>

namespace qfed {

/// Thinnest interior layer accepted by validation (nm).
inline constexpr double min_layer_thickness = 1e-6;

struct Layer
{
    std::string material_name;
    MaterialModel material;
    std::string excitation; // label into an excitation table; may be empty
};

/// Index of the layer containing z for the given interface positions.
/// Layers are numbered 0..N; a point on interface i belongs to layer i (the lower one).
int locate_layer(const std::vector<double>& interfaces, double z);

class LayerStack
{
public:
    /// Throws ValidationError on non-increasing interfaces, thin layers or a count mismatch.
    LayerStack(std::vector<Layer> layers, std::vector<double> interfaces);

    std::size_t layer_count() const { return m_layers.size(); }
    std::size_t interface_count() const { return m_interfaces.size(); }
    const std::vector<Layer>& layers() const { return m_layers; }
    const Layer& layer(std::size_t l) const { return m_layers.at(l); }
    const std::vector<double>& interfaces() const { return m_interfaces; }

    int locate_layer(double z) const { return qfed::locate_layer(m_interfaces, z); }

    /// Interior layers only.
    double thickness(int l) const;

    /// Same layers with interfaces reflected z -> offset - z and the order reversed.
    LayerStack mirrored(double offset = 0.0) const;

private:
    std::vector<Layer> m_layers;
    std::vector<double> m_interfaces;
};

struct Numerics
{
    /// Minimum Im(eps) imposed on every layer; 0 disables the floor.
    double loss_floor = 1e-9;
    bool branch_nudge = true;
};

/// Everything that depends on one (K, photon energy) pair: the floored optical
/// response of each layer and its z-wavenumber.
struct SpectralContext
{
    std::vector<double> interfaces;
    std::vector<OpticalResponse> media;
    std::vector<cplx> kz;
    double energy = 0.0; // eV
    double k0 = 0.0;     // nm^-1
    double K = 0.0;      // nm^-1 (after any nudge)
    bool nudged = false;
    bool floor_applied = false;

    int N() const { return static_cast<int>(interfaces.size()); }
    int locate(double z) const { return locate_layer(interfaces, z); }
    bool interior(int l) const { return l > 0 && l < N(); }
    double thickness(int l) const { return interfaces[l] - interfaces[l - 1]; }
    /// k0 n of layer l.
    cplx k(int l) const { return k0 * media[l].index; }

    /// Recomputes kz from k0, K and media.
    void update_kz();
};

/// sqrt(k0^2 n^2 - K^2) with Im >= 0.
cplx kz_from(double k0, cplx n, double K);

cplx kz_in_layer(const LayerStack& stack, int layer, double K, double energy);

SpectralContext make_context(const LayerStack& stack, double K, double energy,
                             const Numerics& numerics = {});

/// Context from explicit media, bypassing material models and the loss floor.
SpectralContext make_context(std::vector<double> interfaces, std::vector<OpticalResponse> media,
                             double K, double energy);

} // namespace qfed
