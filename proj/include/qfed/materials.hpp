#pragma once

#include <complex>
#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qfed {

using cplx = std::complex<double>;

/// Square root on the branch Im >= 0 (Re >= 0 when the result is real).
cplx sqrt_upper(cplx z);

/// Relative permittivity and permeability of one material at one photon energy.
struct OpticalResponse
{
    cplx epsilon{1.0, 0.0};
    cplx mu{1.0, 0.0};
    cplx index{1.0, 0.0};

    static OpticalResponse from_index(cplx n, cplx mu = 1.0);
    static OpticalResponse from_epsilon(cplx eps, cplx mu = 1.0);
};

struct ConstantIndex
{
    cplx n{1.0, 0.0};
    cplx mu{1.0, 0.0};
};

/// eps = 1 - wp^2 / (w^2 + i w wtau); both energies in eV.
struct Drude
{
    double plasma_energy = 0.0;
    double damping_energy = 0.0;
};

struct TablePoint
{
    double energy = 0.0;
    cplx n;
};

/// Complex index sampled on a strictly increasing energy grid, linearly interpolated.
struct Tabulated
{
    std::vector<TablePoint> points;
};

struct VegardAlloy;

using MaterialModel = std::variant<ConstantIndex, Drude, Tabulated, VegardAlloy>;

/// n = (1 - x) n_A + x n_B.
struct VegardAlloy
{
    double fraction = 0.0;
    std::shared_ptr<const MaterialModel> a;
    std::shared_ptr<const MaterialModel> b;
};

/// Throws DomainError or RangeError.
OpticalResponse evaluate(const MaterialModel& model, double photon_energy);

/// Checks the model invariants; returns a list of problems (empty when fine).
std::vector<std::string> check_model(const MaterialModel& model);

VegardAlloy make_vegard(double fraction, MaterialModel a, MaterialModel b);

/// Parses "energy n_real n_imag" records. Lines starting with '#' are skipped.
Tabulated parse_table(const std::string& text, const std::string& origin = "<table>");
Tabulated load_table(const std::filesystem::path& path);

} // namespace qfed
