#include "qfed/errors.hpp"
#include "qfed/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace qfed {

namespace {

bool wants_sources(const std::vector<std::string>& qs)
{
    return std::any_of(qs.begin(), qs.end(), [](const std::string& q) { return q.rfind("ldos", 0) != 0; });
}

double pick(const std::string& q, const FieldReport& r, double energy)
{
    if (q == "ldos_e")
        return r.rho.rho_e;
    if (q == "ldos_m")
        return r.rho.rho_m;
    if (q == "ldos_tot")
        return r.rho.rho_tot;
    if (q == "n_e")
        return r.n_e;
    if (q == "n_m")
        return r.n_m;
    if (q == "n_tot")
        return r.n_tot;
    if (q == "T_eff" || q == "T_eff_tot")
        return r.T_eff_tot;
    if (q == "T_eff_e")
        return r.T_eff_e;
    if (q == "T_eff_m")
        return r.T_eff_m;
    if (q == "E2")
        return r.E2;
    if (q == "H2")
        return r.H2;
    if (q == "u")
        return r.u;
    if (q == "S_z")
        return r.S_z;
    if (q == "Q")
        return r.Q;
    (void)energy;
    throw DomainError("unknown quantity " + q);
}

struct Column
{
    std::size_t ie, ik;
};

} // namespace

ResultGrid run(const Scenario& sc, unsigned threads)
{
    if (!sc.stack)
        throw Error("scenario has no valid stack");
    ResultGrid g;
    g.scenario_source = sc.source;
    g.z = sc.z;
    g.k = sc.k;
    g.energy = sc.energy;
    g.k_unit = sc.k_unit;
    g.quantities = sc.quantities;
    g.loss_floor = sc.numerics.loss_floor;
    const std::size_t total = g.z.size() * g.k.size() * g.energy.size();
    for (const auto& q : g.quantities)
        g.values[q].assign(total, 0.0);

    const bool sources = wants_sources(sc.quantities);
    if (sources && !sc.profile)
        throw Error("requested quantities need an excitation profile");

    std::vector<Column> columns;
    for (std::size_t ie = 0; ie < g.energy.size(); ++ie)
        for (std::size_t ik = 0; ik < g.k.size(); ++ik)
            columns.push_back({ie, ik});

    // per-column results, merged in column order for deterministic metadata
    std::vector<std::vector<SampleIssue>> aborted(columns.size());
    std::vector<std::optional<SampleIssue>> nudged(columns.size());
    std::vector<char> floored(columns.size(), 0);
    std::vector<double*> slots;
    for (const auto& q : g.quantities)
        slots.push_back(g.values[q].data());

    auto work = [&](std::size_t c) {
        const auto [ie, ik] = columns[c];
        const double e = g.energy[ie];
        const double K = sc.K_at(ik, e);
        SpectralContext ctx;
        StackCoefficients coeffs;
        std::vector<double> etas;
        try {
            ctx = make_context(*sc.stack, K, e, sc.numerics);
            coeffs = stack_coefficients(ctx);
            if (sources)
                etas = sc.profile->at(e);
        } catch (const Error& err) {
            for (double z : g.z)
                aborted[c].push_back({z, K, e, err.what()});
            return;
        }
        floored[c] = ctx.floor_applied;
        if (ctx.nudged)
            nudged[c] = SampleIssue{0.0, ctx.K, e, "K scaled by 1+1e-9 off a light line"};
        for (std::size_t iz = 0; iz < g.z.size(); ++iz) {
            const double z = g.z[iz];
            try {
                FieldReport r;
                if (sources)
                    r = field_report(ctx, coeffs, etas, z);
                else
                    r.rho = ldos(ctx, coeffs, z);
                const std::size_t at = g.index(ie, iz, ik);
                std::vector<double> vals;
                for (const auto& q : g.quantities)
                    vals.push_back(pick(q, r, e));
                if (std::any_of(vals.begin(), vals.end(), [](double v) { return !std::isfinite(v); }))
                    throw Error("non-finite result");
                for (std::size_t qi = 0; qi < vals.size(); ++qi)
                    slots[qi][at] = vals[qi];
            } catch (const Error& err) {
                aborted[c].push_back({z, K, e, err.what()});
            }
        }
    };

    unsigned n = threads ? threads : sc.threads;
    if (n == 0)
        n = std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, columns.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < columns.size(); c = next++)
            work(c);
    };
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t)
            pool.emplace_back(worker);
    }

    for (std::size_t c = 0; c < columns.size(); ++c) {
        g.floor_applied = g.floor_applied || floored[c];
        if (nudged[c])
            g.nudged.push_back(*nudged[c]);
        for (auto& a : aborted[c])
            g.aborted.push_back(a);
    }
    return g;
}

} // namespace qfed
