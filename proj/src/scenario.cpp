#include "qfed/scenario.hpp"

#include "qfed/constants.hpp"
#include "qfed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qfed {

namespace detail {
const std::map<std::string, std::string>& embedded_files();
}

std::optional<std::string> bundled_file(const std::string& name)
{
    const auto& files = detail::embedded_files();
    auto it = files.find(name);
    if (it == files.end())
        return std::nullopt;
    return it->second;
}

const std::vector<std::string>& known_quantities()
{
    static const std::vector<std::string> names = {
        "ldos_e", "ldos_m", "ldos_tot", "n_e",     "n_m", "n_tot", "T_eff", "T_eff_e",
        "T_eff_m", "T_eff_tot", "E2",   "H2",      "u",   "S_z",   "Q"};
    return names;
}

double Scenario::K_at(std::size_t ik, double e) const
{
    return k_unit == KUnit::k0 ? k[ik] * constants::wavenumber(e) : k[ik];
}

namespace {

std::vector<std::string> split_ws(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

class Parser
{
public:
    Parser(const std::string& text, std::filesystem::path base) : m_base(std::move(base))
    {
        m_out.source = text;
        std::istringstream in(text);
        std::string raw;
        int lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            m_line = lineno;
            std::string line = raw.substr(0, raw.find('#'));
            line = trim(line);
            if (line.empty())
                continue;
            if (line.front() == '[') {
                section(line);
                continue;
            }
            entry(line);
        }
        finish();
    }

    Scenario take() { return std::move(m_out); }

private:
    struct LayerLine
    {
        int line;
        std::string material;
        std::optional<double> thickness; // empty for semi-infinite
        std::string excitation;
    };

    void error(const std::string& msg) { error_at(m_line, msg); }
    void error_at(int line, const std::string& msg)
    {
        m_errors.push_back("line " + std::to_string(line) + ": " + msg);
    }

    bool number(const std::string& tok, double& out)
    {
        try {
            std::size_t used = 0;
            out = std::stod(tok, &used);
            if (used != tok.size() || !std::isfinite(out))
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            error("expected a number, got '" + tok + "'");
            return false;
        }
        return true;
    }

    void section(const std::string& line)
    {
        static const std::set<std::string> names = {"materials", "excitations", "layers",
                                                    "grid",      "quantities",  "numerics"};
        if (line.back() != ']') {
            error("malformed section header");
            return;
        }
        m_section = trim(line.substr(1, line.size() - 2));
        if (!names.count(m_section))
            error("unknown section [" + m_section + "]");
        m_seen.insert(m_section);
    }

    void entry(const std::string& line)
    {
        if (m_section == "quantities" && line.find('=') == std::string::npos) {
            for (auto& q : split_ws(line))
                quantity(q);
            return;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            error("expected 'key = value'");
            return;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::vector<std::string> val = split_ws(line.substr(eq + 1));
        if (m_section.empty()) {
            error("entry outside any section");
            return;
        }
        if (val.empty()) {
            error("missing value for '" + key + "'");
            return;
        }
        if (m_section == "materials")
            material(key, val);
        else if (m_section == "excitations")
            excitation(key, val);
        else if (m_section == "layers")
            layer(key, val);
        else if (m_section == "grid")
            grid(key, val);
        else if (m_section == "quantities") {
            if (key != "list")
                error("unknown key '" + key + "' in [quantities]");
            for (auto& q : val)
                quantity(q);
        } else if (m_section == "numerics")
            numerics(key, val);
    }

    void material(const std::string& name, const std::vector<std::string>& v)
    {
        if (m_out.materials.count(name)) {
            error("material '" + name + "' defined twice");
            return;
        }
        const std::string& kind = v[0];
        std::optional<MaterialModel> model;
        if (kind == "constant") {
            // constant n_re [n_im] [mu mu_re mu_im]
            ConstantIndex c;
            std::vector<std::string> rest(v.begin() + 1, v.end());
            auto mu_at = std::find(rest.begin(), rest.end(), "mu");
            std::vector<std::string> nparts(rest.begin(), mu_at);
            double a = 0, b = 0;
            if (nparts.empty() || nparts.size() > 2) {
                error("constant expects 'n_real [n_imag] [mu mu_real mu_imag]'");
                return;
            }
            if (!number(nparts[0], a) || (nparts.size() == 2 && !number(nparts[1], b)))
                return;
            c.n = {a, b};
            if (mu_at != rest.end()) {
                std::vector<std::string> mparts(mu_at + 1, rest.end());
                double mr = 0, mi = 0;
                if (mparts.size() != 2 || !number(mparts[0], mr) || !number(mparts[1], mi)) {
                    error("constant permeability expects 'mu mu_real mu_imag'");
                    return;
                }
                c.mu = {mr, mi};
            }
            model = c;
        } else if (kind == "drude") {
            double wp = 0, wt = 0;
            if (v.size() != 3) {
                error("drude expects 'plasma_energy_ev damping_energy_ev'");
                return;
            }
            if (!number(v[1], wp) || !number(v[2], wt))
                return;
            model = Drude{wp, wt};
        } else if (kind == "table") {
            if (v.size() != 2) {
                error("table expects a single file path");
                return;
            }
            try {
                model = table(v[1]);
            } catch (const Error& e) {
                error(e.what());
                return;
            }
        } else if (kind == "vegard") {
            double x = 0;
            if (v.size() != 4) {
                error("vegard expects 'fraction material_a material_b'");
                return;
            }
            if (!number(v[1], x))
                return;
            auto a = m_out.materials.find(v[2]);
            auto b = m_out.materials.find(v[3]);
            if (a == m_out.materials.end() || b == m_out.materials.end()) {
                error("vegard endpoints must name materials defined above");
                return;
            }
            model = make_vegard(x, a->second, b->second);
        } else {
            error("unknown material kind '" + kind + "' (constant, drude, table, vegard)");
            return;
        }
        for (auto& p : check_model(*model))
            error("material '" + name + "': " + p);
        m_out.materials.emplace(name, *model);
        m_material_line[name] = m_line;
    }

    Tabulated table(const std::string& path)
    {
        std::filesystem::path p(path);
        if (p.is_absolute() || !m_base.empty()) {
            const auto full = p.is_absolute() ? p : m_base / p;
            if (std::filesystem::exists(full))
                return load_table(full);
        }
        if (auto text = bundled_file(p.filename().string()))
            return parse_table(*text, p.filename().string());
        throw RangeError("dispersion table '" + path + "' not found");
    }

    void excitation(const std::string& name, const std::vector<std::string>& v)
    {
        if (m_out.excitations.count(name)) {
            error("excitation '" + name + "' defined twice");
            return;
        }
        const std::string& kind = v[0];
        if (kind == "thermal") {
            double T = 0;
            if (v.size() != 2) {
                error("thermal expects 'temperature_k'");
                return;
            }
            if (!number(v[1], T))
                return;
            if (T < 0)
                error("temperature must be >= 0");
            m_out.excitations.emplace(name, Thermal{T});
        } else if (kind == "biased") {
            double U = 0, T = 0, Eg = 0;
            if (v.size() != 4) {
                error("biased expects 'voltage_v temperature_k gap_ev'");
                return;
            }
            if (!number(v[1], U) || !number(v[2], T) || !number(v[3], Eg))
                return;
            if (T < 0)
                error("temperature must be >= 0");
            m_out.excitations.emplace(name, BiasedQW{U, T, Eg});
        } else if (kind == "custom") {
            double eta = 0;
            if (v.size() != 2) {
                error("custom expects a single photon number");
                return;
            }
            if (!number(v[1], eta))
                return;
            if (eta < 0)
                error("photon number must be >= 0");
            m_out.excitations.emplace(name, Custom{eta});
        } else {
            error("unknown excitation kind '" + kind + "' (thermal, biased, custom)");
            return;
        }
        m_excitation_line[name] = m_line;
    }

    void layer(const std::string& key, const std::vector<std::string>& v)
    {
        if (key == "top_interface_z" || key == "bottom_interface_z") {
            if (m_anchor) {
                error("only one of top_interface_z / bottom_interface_z may be given");
                return;
            }
            double z = 0;
            if (v.size() != 1 || !number(v[0], z))
                return;
            m_anchor = z;
            m_anchor_top = key == "top_interface_z";
            return;
        }
        if (key != "layer") {
            error("unknown key '" + key + "' in [layers]");
            return;
        }
        if (v.size() < 2 || v.size() > 3) {
            error("layer expects 'material thickness_nm|semi [excitation]'");
            return;
        }
        LayerLine ll{m_line, v[0], std::nullopt, v.size() == 3 ? v[2] : std::string()};
        if (v[1] != "semi") {
            double d = 0;
            if (!number(v[1], d))
                return;
            ll.thickness = d;
        }
        m_layers.push_back(ll);
    }

    std::optional<std::vector<double>> axis(const std::vector<std::string>& v)
    {
        std::vector<double> out;
        if (v[0] == "linspace") {
            double a = 0, b = 0, n = 0;
            if (v.size() != 4) {
                error("linspace expects 'start stop count'");
                return std::nullopt;
            }
            if (!number(v[1], a) || !number(v[2], b) || !number(v[3], n))
                return std::nullopt;
            if (n < 1 || n != std::floor(n) || n > 1e7) {
                error("linspace count must be a positive integer");
                return std::nullopt;
            }
            const auto count = static_cast<std::size_t>(n);
            for (std::size_t i = 0; i < count; ++i)
                out.push_back(count == 1 ? a : a + (b - a) * double(i) / double(count - 1));
        } else if (v[0] == "list") {
            for (std::size_t i = 1; i < v.size(); ++i) {
                double x = 0;
                if (!number(v[i], x))
                    return std::nullopt;
                out.push_back(x);
            }
        } else {
            error("grid axis expects 'linspace start stop count' or 'list v1 v2 ...'");
            return std::nullopt;
        }
        if (out.empty())
            error("grid axis is empty");
        for (std::size_t i = 1; i < out.size(); ++i)
            if (!(out[i] > out[i - 1])) {
                error("grid axis must be strictly increasing");
                break;
            }
        return out;
    }

    void grid(const std::string& key, const std::vector<std::string>& v)
    {
        if (key == "k_unit") {
            if (v.size() == 1 && v[0] == "k0")
                m_out.k_unit = KUnit::k0;
            else if (v.size() == 1 && v[0] == "per_nm")
                m_out.k_unit = KUnit::per_nm;
            else
                error("k_unit must be k0 or per_nm");
            return;
        }
        std::vector<double>* target = nullptr;
        if (key == "z")
            target = &m_out.z;
        else if (key == "k")
            target = &m_out.k;
        else if (key == "energy")
            target = &m_out.energy;
        else {
            error("unknown key '" + key + "' in [grid]");
            return;
        }
        m_grid_line[key] = m_line;
        if (auto a = axis(v)) {
            *target = *a;
            if (key == "k" && !a->empty() && a->front() < 0)
                error("k samples must be >= 0");
            if (key == "energy" && !a->empty() && !(a->front() > 0))
                error("photon energies must be positive");
        }
    }

    void quantity(const std::string& q)
    {
        const auto& known = known_quantities();
        if (std::find(known.begin(), known.end(), q) == known.end()) {
            error("unknown quantity '" + q + "'");
            return;
        }
        if (std::find(m_out.quantities.begin(), m_out.quantities.end(), q) ==
            m_out.quantities.end())
            m_out.quantities.push_back(q);
    }

    void numerics(const std::string& key, const std::vector<std::string>& v)
    {
        if (v.size() != 1) {
            error("'" + key + "' takes a single value");
            return;
        }
        if (key == "loss_floor") {
            double f = 0;
            if (!number(v[0], f))
                return;
            if (f < 0)
                error("loss_floor must be >= 0");
            m_out.numerics.loss_floor = f;
        } else if (key == "branch_nudge") {
            if (v[0] == "true")
                m_out.numerics.branch_nudge = true;
            else if (v[0] == "false")
                m_out.numerics.branch_nudge = false;
            else
                error("branch_nudge must be true or false");
        } else if (key == "threads") {
            double t = 0;
            if (!number(v[0], t))
                return;
            if (t < 0 || t != std::floor(t) || t > 4096)
                error("threads must be a non-negative integer");
            else
                m_out.threads = static_cast<unsigned>(t);
        } else {
            error("unknown key '" + key + "' in [numerics]");
        }
    }

    static bool needs_sources(const std::string& q) { return q.rfind("ldos", 0) != 0; }

    void finish()
    {
        const int end = m_line;
        if (m_layers.size() < 1)
            error_at(end, "[layers] needs at least one layer");
        if (m_out.z.empty())
            error_at(end, "[grid] needs a z axis");
        if (m_out.k.empty())
            error_at(end, "[grid] needs a k axis");
        if (m_out.energy.empty())
            error_at(end, "[grid] needs an energy axis");
        if (m_out.quantities.empty())
            error_at(end, "[quantities] must list at least one quantity");

        std::vector<Layer> layers;
        std::vector<double> thick;
        bool layers_ok = true;
        for (std::size_t i = 0; i < m_layers.size(); ++i) {
            const auto& ll = m_layers[i];
            const bool outer = i == 0 || i + 1 == m_layers.size();
            if (outer && ll.thickness) {
                error_at(ll.line, "outermost layers must be 'semi'");
                layers_ok = false;
            }
            if (!outer && !ll.thickness) {
                error_at(ll.line, "interior layers need a thickness in nm");
                layers_ok = false;
            }
            if (!outer && ll.thickness && !(*ll.thickness >= min_layer_thickness)) {
                std::ostringstream msg;
                msg << "layer thickness must be >= " << min_layer_thickness << " nm";
                error_at(ll.line, msg.str());
                layers_ok = false;
            }
            auto mat = m_out.materials.find(ll.material);
            if (mat == m_out.materials.end()) {
                error_at(ll.line, "unknown material '" + ll.material + "'");
                layers_ok = false;
                continue;
            }
            if (!ll.excitation.empty() && !m_out.excitations.count(ll.excitation)) {
                error_at(ll.line, "unknown excitation '" + ll.excitation + "'");
                layers_ok = false;
            }
            layers.push_back({ll.material, mat->second, ll.excitation});
            if (!outer && ll.thickness)
                thick.push_back(*ll.thickness);
        }

        if (layers_ok && !layers.empty()) {
            std::vector<double> zs(layers.size() - 1);
            if (!zs.empty()) {
                const double anchor = m_anchor.value_or(0.0);
                if (m_anchor_top || !m_anchor) {
                    zs.back() = anchor;
                    for (std::size_t i = zs.size() - 1; i-- > 0;)
                        zs[i] = zs[i + 1] - thick[i];
                } else {
                    zs.front() = anchor;
                    for (std::size_t i = 1; i < zs.size(); ++i)
                        zs[i] = zs[i - 1] + thick[i - 1];
                }
            }
            try {
                m_out.stack.emplace(layers, zs);
            } catch (const ValidationError& e) {
                for (auto& p : e.problems())
                    error_at(m_layers.front().line, p);
            }
        }

        // dispersion coverage of the energy grid
        for (const auto& [name, model] : m_out.materials)
            for (double e : m_out.energy) {
                if (!(e > 0))
                    break;
                try {
                    (void)evaluate(model, e);
                } catch (const Error& err) {
                    error_at(m_material_line[name], "material '" + name + "': " + err.what());
                    break;
                }
            }

        // biased sources need hbar*omega > eU wherever the bias applies
        for (const auto& [name, rule] : m_out.excitations)
            if (const auto* q = std::get_if<BiasedQW>(&rule))
                for (double e : m_out.energy)
                    if (e >= q->Eg && !(e > q->U)) {
                        std::ostringstream msg;
                        msg << "excitation '" << name << "': eU = " << q->U
                            << " eV is not below the photon energy " << e
                            << " eV (occupation diverges)";
                        error_at(m_excitation_line[name], msg.str());
                        break;
                    }

        const bool any_sources = std::any_of(m_out.quantities.begin(), m_out.quantities.end(),
                                             needs_sources);
        const bool any_excitation = std::any_of(m_layers.begin(), m_layers.end(),
                                                [](auto& l) { return !l.excitation.empty(); });
        if (m_out.stack && (any_sources || any_excitation)) {
            ExcitationProfile prof;
            for (const auto& ll : m_layers) {
                if (ll.excitation.empty()) {
                    error_at(ll.line, "layer needs an excitation for the requested quantities");
                    continue;
                }
                auto it = m_out.excitations.find(ll.excitation);
                if (it != m_out.excitations.end())
                    prof.layers.push_back(it->second);
            }
            if (prof.layers.size() == m_layers.size())
                m_out.profile = std::move(prof);
        }

        if (!m_errors.empty())
            throw ValidationError(m_errors);
    }

    Scenario m_out;
    std::filesystem::path m_base;
    std::vector<std::string> m_errors;
    std::string m_section;
    std::set<std::string> m_seen;
    int m_line = 0;
    std::vector<LayerLine> m_layers;
    std::optional<double> m_anchor;
    bool m_anchor_top = true;
    std::map<std::string, int> m_material_line, m_excitation_line, m_grid_line;
};

} // namespace

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir)
{
    Parser p(text, base_dir);
    return p.take();
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error("cannot open scenario file " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str(), path.parent_path());
}

Scenario demo_scenario(DemoCase which)
{
    const char* name = which == DemoCase::thermal ? "demo_thermal.scn" : "demo_biased.scn";
    auto text = bundled_file(name);
    if (!text)
        throw Error(std::string("bundled scenario missing: ") + name);
    return parse_scenario(*text);
}

} // namespace qfed
