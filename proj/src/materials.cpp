#include "qfed/materials.hpp"

#include "qfed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qfed {

cplx sqrt_upper(cplx z)
{
    cplx r = std::sqrt(z);
    if (r.imag() < 0.0 || (r.imag() == 0.0 && r.real() < 0.0))
        r = -r;
    return r;
}

OpticalResponse OpticalResponse::from_index(cplx n, cplx mu)
{
    OpticalResponse out;
    if (n.imag() < 0.0 || (n.imag() == 0.0 && n.real() < 0.0))
        n = -n;
    out.index = n;
    out.mu = mu;
    out.epsilon = n * n / mu;
    return out;
}

OpticalResponse OpticalResponse::from_epsilon(cplx eps, cplx mu)
{
    OpticalResponse out;
    out.epsilon = eps;
    out.mu = mu;
    out.index = sqrt_upper(eps * mu);
    return out;
}

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// index plus permeability; epsilon is derived last so that n^2 = eps mu holds
struct IndexMu
{
    cplx n;
    cplx mu;
};

IndexMu index_of(const MaterialModel& model, double e);

IndexMu index_of(const Tabulated& table, double e)
{
    const auto& p = table.points;
    if (p.size() < 2)
        throw RangeError("dispersion table needs at least two points");
    if (e < p.front().energy || e > p.back().energy) {
        std::ostringstream msg;
        msg << "photon energy " << e << " eV outside table range [" << p.front().energy << ", "
            << p.back().energy << "] eV";
        throw RangeError(msg.str());
    }
    auto hi = std::lower_bound(p.begin(), p.end(), e,
                               [](const TablePoint& a, double v) { return a.energy < v; });
    if (hi->energy == e)
        return {hi->n, 1.0};
    auto lo = hi - 1;
    double w = (e - lo->energy) / (hi->energy - lo->energy);
    double re = (1.0 - w) * lo->n.real() + w * hi->n.real();
    double im = (1.0 - w) * lo->n.imag() + w * hi->n.imag();
    return {{re, im}, 1.0};
}

IndexMu index_of(const MaterialModel& model, double e)
{
    return std::visit(
        overloaded{
            [](const ConstantIndex& c) { return IndexMu{c.n, c.mu}; },
            [e](const Drude& d) {
                const double wp = d.plasma_energy;
                cplx eps = 1.0 - wp * wp / cplx(e * e, e * d.damping_energy);
                return IndexMu{sqrt_upper(eps), 1.0};
            },
            [e](const Tabulated& t) { return index_of(t, e); },
            [e](const VegardAlloy& v) {
                IndexMu a = index_of(*v.a, e);
                if (v.fraction == 0.0)
                    return a;
                IndexMu b = index_of(*v.b, e);
                if (v.fraction == 1.0)
                    return b;
                const double x = v.fraction;
                return IndexMu{(1.0 - x) * a.n + x * b.n, (1.0 - x) * a.mu + x * b.mu};
            },
        },
        model);
}

void check_into(const MaterialModel& model, std::vector<std::string>& out)
{
    std::visit(overloaded{
                   [&](const ConstantIndex& c) {
                       if (c.n.imag() < 0.0)
                           out.push_back("constant index has negative imaginary part (gain)");
                       if (c.mu.imag() < 0.0)
                           out.push_back("constant permeability has negative imaginary part");
                   },
                   [&](const Drude& d) {
                       if (!(d.plasma_energy >= 0.0))
                           out.push_back("Drude plasma energy must be >= 0");
                       if (!(d.damping_energy >= 0.0))
                           out.push_back("Drude damping energy must be >= 0");
                   },
                   [&](const Tabulated& t) {
                       if (t.points.size() < 2)
                           out.push_back("dispersion table needs at least two points");
                       for (std::size_t i = 1; i < t.points.size(); ++i)
                           if (!(t.points[i].energy > t.points[i - 1].energy)) {
                               out.push_back("dispersion table energies must be strictly increasing");
                               break;
                           }
                       for (const auto& p : t.points)
                           if (p.n.imag() < 0.0) {
                               out.push_back("dispersion table has negative extinction (gain)");
                               break;
                           }
                   },
                   [&](const VegardAlloy& v) {
                       if (!(v.fraction >= 0.0 && v.fraction <= 1.0))
                           out.push_back("Vegard fraction must lie in [0, 1]");
                       if (!v.a || !v.b) {
                           out.push_back("Vegard alloy needs two endpoint models");
                           return;
                       }
                       check_into(*v.a, out);
                       check_into(*v.b, out);
                   },
               },
               model);
}

} // namespace

OpticalResponse evaluate(const MaterialModel& model, double photon_energy)
{
    if (!(photon_energy > 0.0))
        throw DomainError("photon energy must be positive");
    IndexMu im = index_of(model, photon_energy);
    return OpticalResponse::from_index(im.n, im.mu);
}

std::vector<std::string> check_model(const MaterialModel& model)
{
    std::vector<std::string> out;
    check_into(model, out);
    return out;
}

VegardAlloy make_vegard(double fraction, MaterialModel a, MaterialModel b)
{
    return {fraction, std::make_shared<const MaterialModel>(std::move(a)),
            std::make_shared<const MaterialModel>(std::move(b))};
}

Tabulated parse_table(const std::string& text, const std::string& origin)
{
    Tabulated out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        double e, nr, ni;
        if (!(fields >> e >> nr >> ni))
            throw RangeError(origin + ":" + std::to_string(lineno) +
                             ": expected 'energy n_real n_imag'");
        if (!out.points.empty() && !(e > out.points.back().energy))
            throw RangeError(origin + ":" + std::to_string(lineno) +
                             ": energies must be strictly increasing");
        out.points.push_back({e, {nr, ni}});
    }
    if (out.points.size() < 2)
        throw RangeError(origin + ": dispersion table needs at least two points");
    return out;
}

Tabulated load_table(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f)
        throw RangeError("cannot open dispersion table " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_table(ss.str(), path.string());
}

} // namespace qfed
