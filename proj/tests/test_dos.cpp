#include "oracles.hpp"

#include "qfed/constants.hpp"
#include "qfed/dos.hpp"
#include "qfed/errors.hpp"
#include "qfed/scenario.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace qfed;
using constants::wavenumber;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

namespace {

double rel(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Random stack whose outer media are lossy so both tails decay.
SpectralContext lossy_context(std::mt19937_64& rng, bool magnetic)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto s = oracle::random_stack(rng, magnetic, 3, 4);
    const double E = 1.5 + 1.5 * u(rng);
    const double K = 3.0 * wavenumber(E) * u(rng);
    return make_context(s.interfaces, s.media, K, E);
}

SpectralContext demo_context(double K_over_k0, double E)
{
    static const Scenario sc = demo_scenario(DemoCase::biased);
    return make_context(*sc.stack, K_over_k0 * wavenumber(E), E, sc.numerics);
}

} // namespace

TEST_SUITE("dos")
{
    TEST_CASE("closed-form segment integrals")
    {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            const cplx k{0.1 * u(rng) - 0.02, 0.05 * u(rng) + 1e-4};
            const double L = 0.5 + 200.0 * u(rng);
            const double a = oracle::simpson(
                [&](double x) { return std::norm(std::exp(cplx(0, 1) * k * x)); }, 0.0, L, 1e-14);
            CHECK(rel(integral_abs2(k, L), a) < 1e-9);
            const double cr = oracle::simpson(
                [&](double x) {
                    return (std::exp(cplx(0, 1) * k * x) * std::conj(std::exp(cplx(0, 1) * k * (L - x)))).real();
                },
                0.0, L, 1e-14);
            const double ci = oracle::simpson(
                [&](double x) {
                    return (std::exp(cplx(0, 1) * k * x) * std::conj(std::exp(cplx(0, 1) * k * (L - x)))).imag();
                },
                0.0, L, 1e-14);
            const cplx c = integral_cross(k, L);
            CHECK(std::abs(c - cplx(cr, ci)) < 1e-9 * std::max(1.0, std::abs(c)));
        }
        CHECK(integral_abs2({0.01, 0.02}, inf) == doctest::Approx(25.0));
        CHECK_THROWS_AS(integral_abs2({0.01, 0.0}, inf), TailDivergenceError);
        // tiny kappa L is handled without cancellation
        CHECK(integral_abs2({0.3, 1e-15}, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    }

    TEST_CASE("uniform lossy medium kernel")
    {
        const double E = 2.0;
        const auto ctx = make_context({}, {OpticalResponse::from_index({1.6, 0.05})},
                                      0.8 * wavenumber(E), E);
        const auto c = stack_coefficients(ctx);
        const double kappa = ctx.kz[0].imag();
        const double z = 0.0;
        const double k1 = nldos(ctx, c, FieldChannel::electric, z, -10.0).value();
        const double k2 = nldos(ctx, c, FieldChannel::electric, z, -30.0).value();
        CHECK(k2 / k1 == doctest::Approx(std::exp(-2.0 * kappa * 20.0)).epsilon(1e-12));
        // nonmagnetic: no magnetic-source part
        CHECK(nldos(ctx, c, FieldChannel::total, z, 5.0).from_magnetic == 0.0);
        CHECK(ldos_consistency(ctx, c, z) < 1e-8);
        // the total kernel integral is exactly 1/kappa times its value at z' -> z
        const auto li = source_integrals(ctx, c, z);
        const double at = nldos(ctx, c, FieldChannel::electric, z, z - 1e-12).value();
        CHECK(li[0].electric.value() == doctest::Approx(at / kappa).epsilon(1e-9));
    }

    TEST_CASE("analytic layer integrals agree with adaptive quadrature")
    {
        std::mt19937_64 rng(31);
        double worst = 0.0;
        for (int trial = 0; trial < 12; ++trial) {
            const auto ctx = lossy_context(rng, trial % 2 == 1);
            const auto c = stack_coefficients(ctx);
            const auto& iface = ctx.interfaces;
            const double z = oracle::random_point(rng, iface, iface.front() - 20.0, iface.back() + 20.0);
            const auto li = source_integrals(ctx, c, z);
            double scale_e = 0.0, scale_m = 0.0, scale_f = 0.0;
            for (const auto& x : li) {
                scale_e += x.electric.value();
                scale_m += x.magnetic.value();
                scale_f += std::abs(x.flux);
            }
            const double nr = ctx.media[ctx.locate(z)].index.real();
            for (int l = 0; l <= ctx.N(); ++l) {
                auto ke = [&](double zp) { return nldos(ctx, c, FieldChannel::electric, z, zp).from_electric; };
                auto km = [&](double zp) { return nldos(ctx, c, FieldChannel::magnetic, z, zp).value(); };
                auto kf = [&](double zp) { return ifdos(ctx, c, z, zp) / nr; };
                const double se = oracle::layer_simpson(ctx, l, z, ke, 1e-12 * scale_e);
                const double sm = oracle::layer_simpson(ctx, l, z, km, 1e-12 * scale_m);
                const double sf = oracle::layer_simpson(ctx, l, z, kf, 1e-12 * scale_f);
                worst = std::max({worst, std::abs(se - li[l].electric.from_electric) / scale_e,
                                  std::abs(sm - li[l].magnetic.value()) / scale_m,
                                  std::abs(sf - li[l].flux) / scale_f});
            }
        }
        INFO("worst gap relative to the total " << worst);
        CHECK(worst < 1e-8);
    }

    TEST_CASE("LDOS equals the unit-weight source integral")
    {
        std::mt19937_64 rng(12);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto ctx = lossy_context(rng, trial % 2 == 0);
            const auto c = stack_coefficients(ctx);
            const auto& iface = ctx.interfaces;
            const double z = oracle::random_point(rng, iface, iface.front() - 30.0, iface.back() + 30.0, 0.01);
            worst = std::max(worst, ldos_consistency(ctx, c, z));
        }
        INFO("worst residual " << worst);
        CHECK(worst < 1e-6);

        const auto demo = demo_context(2.0, 2.786);
        CHECK(ldos_consistency(demo, stack_coefficients(demo), -41.0) < 1e-6);
    }

    TEST_CASE("lossless stack has no sources")
    {
        const double E = 2.0;
        const auto ctx = make_context({0.0, 50.0},
                                      {OpticalResponse::from_index(1.0),
                                       OpticalResponse::from_index(2.0),
                                       OpticalResponse::from_index(1.5)},
                                      0.3 * wavenumber(E), E);
        const auto c = stack_coefficients(ctx);
        CHECK(nldos(ctx, c, FieldChannel::total, 10.0, 20.0).value() == 0.0);
        CHECK(ifdos(ctx, c, 10.0, 20.0) == 0.0);
        const auto li = source_integrals(ctx, c, 10.0);
        for (const auto& x : li) {
            CHECK(x.electric.value() == 0.0);
            CHECK(x.flux == 0.0);
        }
        CHECK(ldos_consistency(ctx, c, 10.0) > 0.0); // direct side is finite, sources are not
        CHECK(integrate_sources(ctx, c, KernelKind::nldos_tot, 10.0, {1.0, 1.0, 1.0}) == 0.0);
    }

    TEST_CASE("unfloored lossy half space without decay")
    {
        // lossy film between lossless outer media with a propagating wave outside
        const double E = 2.0;
        auto media = std::vector{OpticalResponse::from_epsilon({2.0, 1e-3}),
                                 OpticalResponse::from_epsilon({2.0, 0.3}),
                                 OpticalResponse::from_epsilon({2.0, 0.0})};
        media[2].epsilon = {2.0, 0.0};
        auto ctx = make_context({0.0, 10.0}, media, 0.2 * wavenumber(E), E);
        ctx.kz[0] = ctx.kz[0].real(); // no decay but nonzero source strength
        const auto c = stack_coefficients(ctx);
        CHECK_THROWS_AS(source_integrals(ctx, c, 5.0), TailDivergenceError);
    }

    TEST_CASE("interference kernel")
    {
        const double E = 2.5;
        const auto ctx = make_context({}, {OpticalResponse::from_index({1.4, 0.02})},
                                      0.5 * wavenumber(E), E);
        const auto c = stack_coefficients(ctx);
        CHECK(ifdos(ctx, c, 0.0, -15.0) > 0.0);
        CHECK(ifdos(ctx, c, 0.0, 15.0) < 0.0);

        std::mt19937_64 rng(77);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto r = lossy_context(rng, trial % 2 == 0);
            const auto rc = stack_coefficients(r);
            const auto& iface = r.interfaces;
            const double z = oracle::random_point(rng, iface, iface.front() - 30.0, iface.back() + 30.0);
            const auto li = source_integrals(r, rc, z);
            double sum = 0.0, big = 0.0;
            for (const auto& x : li) {
                sum += x.flux;
                big = std::max(big, std::abs(x.flux));
            }
            worst = std::max(worst, std::abs(sum) / big);
        }
        INFO("worst zero-sum residual " << worst);
        CHECK(worst < 1e-8);
    }

    TEST_CASE("vacuum density of states")
    {
        for (double E : {0.8, 2.0, 3.5}) {
            const double k0 = wavenumber(E);
            auto rho = [&](double theta) {
                const double K = k0 * std::sin(theta);
                const auto ctx = make_context({}, {OpticalResponse::from_index(1.0)}, K, E);
                const double r = ldos(ctx, stack_coefficients(ctx), 0.0).rho_tot;
                return 2.0 * constants::pi * r * k0 * k0 * std::sin(theta) * std::cos(theta);
            };
            const double total =
                boost::math::quadrature::gauss<double, 30>::integrate(rho, 0.0, constants::pi / 2);
            CHECK(rel(total, vacuum_dos(E)) < 1e-4);
            // no evanescent contribution in strict vacuum
            const auto ev = make_context({}, {OpticalResponse::from_index(1.0)}, 2.0 * k0, E);
            CHECK(ldos(ev, stack_coefficients(ev), 0.0).rho_tot == 0.0);
            // normalization: k0/kz in vacuum
            const auto mid = make_context({}, {OpticalResponse::from_index(1.0)}, 0.6 * k0, E);
            const double nd = normalized_dos(ldos(mid, stack_coefficients(mid), 0.0).rho_tot, E);
            CHECK(nd == doctest::Approx(1.0 / 0.8).epsilon(1e-12));
        }
    }

    TEST_CASE("denser medium at normal incidence")
    {
        const double E = 2.0;
        auto at = [&](double n) {
            const auto ctx = make_context({}, {OpticalResponse::from_index(n)}, 0.0, E);
            return ldos(ctx, stack_coefficients(ctx), 0.0).rho_tot;
        };
        CHECK(at(3.0) / at(1.5) == doctest::Approx(2.0).epsilon(1e-12));
    }

    TEST_CASE("surface plasmon enhancement on the demo stack")
    {
        const double E = 2.786, z = -21.0;
        double best = 0.0;
        for (double q = 2.6; q <= 7.0; q += 0.02) {
            const auto ctx = demo_context(q, E);
            best = std::max(best, ldos(ctx, stack_coefficients(ctx), z).rho_tot);
        }
        const auto low = demo_context(0.5, E);
        const double ref = ldos(low, stack_coefficients(low), z).rho_tot;
        INFO("peak over K=0.5k0 ratio " << best / ref);
        CHECK(best > 10.0 * ref);
    }

    TEST_CASE("mirrored stack gives the mirrored LDOS")
    {
        const auto sc = demo_scenario(DemoCase::thermal);
        const auto mir = sc.stack->mirrored(0.0);
        const double E = 2.786;
        for (double q : {0.3, 1.9, 4.0}) {
            const double K = q * wavenumber(E);
            const auto a = make_context(*sc.stack, K, E, sc.numerics);
            const auto b = make_context(mir, K, E, sc.numerics);
            for (double z : {-300.0, -41.0, -10.0, 50.0}) {
                const auto la = ldos(a, stack_coefficients(a), z);
                const auto lb = ldos(b, stack_coefficients(b), -z);
                CHECK(rel(la.rho_e, lb.rho_e) < 1e-9);
                CHECK(rel(la.rho_m, lb.rho_m) < 1e-9);
            }
        }
    }

    TEST_CASE("passivity")
    {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 50; ++trial) {
            const auto ctx = lossy_context(rng, trial % 2 == 0);
            const auto c = stack_coefficients(ctx);
            const auto& iface = ctx.interfaces;
            const double z = oracle::random_point(rng, iface, iface.front() - 30.0, iface.back() + 30.0);
            const auto v = ldos(ctx, c, z);
            CHECK(v.rho_e > 0.0);
            CHECK(v.rho_m > 0.0);
            const double zp = oracle::random_point(rng, iface, iface.front() - 30.0, iface.back() + 30.0);
            if (std::abs(z - zp) > 1e-3) {
                const auto k = nldos(ctx, c, FieldChannel::total, z, zp);
                CHECK(k.from_electric >= 0.0);
                CHECK(k.from_magnetic >= 0.0);
            }
        }
    }
}
