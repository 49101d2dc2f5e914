#include "qfed/errors.hpp"
#include "qfed/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace qfed {

namespace {

std::string fmt17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* unit_of(const std::string& q)
{
    if (q.rfind("ldos", 0) == 0)
        return "eV^-1 nm^-1 (per unit photon energy and per nm^-2 of in-plane wavevector)";
    if (q.rfind("n_", 0) == 0)
        return "dimensionless";
    if (q.rfind("T_eff", 0) == 0)
        return "K";
    if (q == "E2")
        return "V^2 nm^-1 eV^-1 (E^2 spectral density per nm^-2 of in-plane wavevector)";
    if (q == "H2")
        return "A^2 nm^-3 eV^-1 (H^2 spectral density per nm^-2 of in-plane wavevector)";
    if (q == "u")
        return "nm^-1 (energy density per eV per nm^-2 of in-plane wavevector)";
    if (q == "S_z")
        return "s^-1 (energy flux per eV per nm^-2 of in-plane wavevector)";
    if (q == "Q")
        return "s^-1 nm^-1 (net emission per eV per nm^-2 of in-plane wavevector)";
    return "";
}

bool is_dos(const std::string& q) { return q.rfind("ldos", 0) == 0; }

struct Layout
{
    bool columns_are_k;
    std::size_t rows, cols, blocks;
};

Layout layout_of(const ResultGrid& g)
{
    const bool by_k = g.k.size() > 1 || g.energy.size() == 1;
    return {by_k, g.z.size(), by_k ? g.k.size() : g.energy.size(), by_k ? g.energy.size() : 1};
}

double value_at(const ResultGrid& g, const std::vector<double>& v, const Layout& L,
                std::size_t block, std::size_t row, std::size_t col)
{
    return L.columns_are_k ? v[g.index(block, row, col)] : v[g.index(col, row, 0)];
}

void write_matrix(const ResultGrid& g, const std::string& name, const std::vector<double>& v,
                  const std::filesystem::path& path)
{
    const Layout L = layout_of(g);
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot write " + path.string());
    const char* kunit = g.k_unit == KUnit::k0 ? "K/k0" : "K nm^-1";
    f << "# quantity: " << name << "\n";
    f << "# unit: " << (name.size() > 11 && name.ends_with("_normalized")
                            ? "dimensionless (relative to vacuum, times 2 pi k0^2)"
                            : unit_of(name))
      << "\n";
    f << "# rows: z (nm), " << L.rows << " samples\n";
    f << "# columns: " << (L.columns_are_k ? kunit : "photon energy (eV)") << ", " << L.cols
      << " samples\n";
    f << "# z_nm:";
    for (double z : g.z)
        f << '\t' << fmt17(z);
    f << "\n# " << (L.columns_are_k ? (g.k_unit == KUnit::k0 ? "k_over_k0" : "k_per_nm") : "energy_ev")
      << ":";
    for (std::size_t c = 0; c < L.cols; ++c)
        f << '\t' << fmt17(L.columns_are_k ? g.k[c] : g.energy[c]);
    f << "\n";
    for (std::size_t b = 0; b < L.blocks; ++b) {
        if (L.columns_are_k)
            f << "# energy_ev: " << fmt17(g.energy[b]) << "\n";
        for (std::size_t r = 0; r < L.rows; ++r) {
            for (std::size_t c = 0; c < L.cols; ++c) {
                if (c)
                    f << '\t';
                f << fmt17(value_at(g, v, L, b, r, c));
            }
            f << '\n';
        }
    }
    if (!f)
        throw Error("write failed for " + path.string());
}

// Simple blue-white-red ramp with z down the image and columns across.
void write_ppm(const ResultGrid& g, const std::string& name, const std::vector<double>& v,
               const std::filesystem::path& path)
{
    const Layout L = layout_of(g);
    const bool logscale = is_dos(name) || name == "u" || name == "E2" || name == "H2";
    std::vector<double> img;
    for (std::size_t r = 0; r < L.rows; ++r)
        for (std::size_t c = 0; c < L.cols; ++c) {
            double x = value_at(g, v, L, 0, r, c);
            if (logscale)
                x = x > 0 ? std::log10(x) : std::nan("");
            img.push_back(x);
        }
    double lo = INFINITY, hi = -INFINITY;
    for (double x : img)
        if (std::isfinite(x)) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    if (!(hi > lo))
        hi = lo + 1.0;
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot write " + path.string());
    // columns run left to right, z bottom (first sample) to top
    f << "P6\n" << L.rows << ' ' << L.cols << "\n255\n";
    for (std::size_t c = L.cols; c-- > 0;)
        for (std::size_t r = 0; r < L.rows; ++r) {
            const double x = img[r * L.cols + c];
            unsigned char px[3] = {0, 0, 0};
            if (std::isfinite(x)) {
                const double t = (x - lo) / (hi - lo);
                const double red = std::clamp(2.0 * t, 0.0, 1.0);
                const double blue = std::clamp(2.0 - 2.0 * t, 0.0, 1.0);
                const double green = 1.0 - std::abs(2.0 * t - 1.0);
                px[0] = static_cast<unsigned char>(255 * red);
                px[1] = static_cast<unsigned char>(255 * green);
                px[2] = static_cast<unsigned char>(255 * blue);
            }
            f.write(reinterpret_cast<const char*>(px), 3);
        }
    if (!f)
        throw Error("write failed for " + path.string());
}

} // namespace

std::vector<std::filesystem::path> write_results(const ResultGrid& g,
                                                 const std::filesystem::path& dir, bool render)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error("cannot create " + dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    auto emit = [&](const std::string& name, const std::vector<double>& v) {
        const auto p = dir / (name + ".tsv");
        write_matrix(g, name, v, p);
        written.push_back(p);
        files.push_back(p.filename().string());
        if (render) {
            const auto img = dir / (name + ".ppm");
            write_ppm(g, name, v, img);
            written.push_back(img);
        }
    };
    for (const auto& q : g.quantities) {
        const auto& v = g.values.at(q);
        emit(q, v);
        if (is_dos(q)) {
            std::vector<double> norm(v.size());
            for (std::size_t ie = 0; ie < g.energy.size(); ++ie)
                for (std::size_t iz = 0; iz < g.z.size(); ++iz)
                    for (std::size_t ik = 0; ik < g.k.size(); ++ik) {
                        const auto at = g.index(ie, iz, ik);
                        norm[at] = normalized_dos(v[at], g.energy[ie]);
                    }
            emit(q + "_normalized", norm);
        }
    }

    nlohmann::ordered_json meta;
    meta["tool"] = "qfed";
    meta["version"] = tool_version;
    meta["units"] = {{"energy", "eV"},
                     {"length", "nm"},
                     {"k", g.k_unit == KUnit::k0 ? "k0 = E / (hbar c)" : "nm^-1"},
                     {"hbar_c_ev_nm", 197.3269804}};
    meta["axes"] = {{"z_nm", g.z}, {"k", g.k}, {"energy_ev", g.energy}};
    nlohmann::ordered_json qs = nlohmann::ordered_json::object();
    for (const auto& q : g.quantities)
        qs[q] = unit_of(q);
    meta["quantities"] = qs;
    meta["files"] = files;
    meta["loss_floor"] = {{"value", g.loss_floor}, {"applied", g.floor_applied}};
    auto issues = [](const std::vector<SampleIssue>& v) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& s : v)
            a.push_back({{"z_nm", s.z}, {"K_per_nm", s.K}, {"energy_ev", s.energy},
                         {"message", s.message}});
        return a;
    };
    meta["branch_nudges"] = issues(g.nudged);
    meta["aborted_samples"] = issues(g.aborted);
    meta["scenario"] = g.scenario_source;

    const auto mp = dir / "metadata.json";
    std::ofstream f(mp, std::ios::binary);
    if (!f)
        throw Error("cannot write " + mp.string());
    f << meta.dump(2) << '\n';
    if (!f)
        throw Error("write failed for " + mp.string());
    written.push_back(mp);
    return written;
}

} // namespace qfed
