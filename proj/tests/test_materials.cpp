#include "qfed/errors.hpp"
#include "qfed/materials.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qfed;

TEST_SUITE("materials")
{
    TEST_CASE("drude silver at the emitter gap")
    {
        const auto r = evaluate(Drude{9.04, 0.02125}, 2.76);
        CHECK(std::abs(r.index.real() - 0.013) <= 1e-3);
        CHECK(std::abs(r.index.imag() - 3.119) <= 1e-3);
        // direct evaluation of 1 - wp^2/(w^2 + i w wt)
        CHECK(std::abs(r.epsilon.real() - -9.728) <= 1e-3);
        CHECK(std::abs(r.epsilon.imag() - 0.0826) <= 1e-4);
    }

    TEST_CASE("vacuum constant")
    {
        const auto r = evaluate(ConstantIndex{1.0}, 1.234);
        CHECK(r.epsilon == cplx(1.0));
        CHECK(r.mu == cplx(1.0));
        CHECK(r.index == cplx(1.0));
    }

    TEST_CASE("branch discipline and n^2 = eps mu")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 200; ++i) {
            const double e = 0.1 + 6.0 * u(rng);
            std::vector<MaterialModel> models = {
                Drude{1.0 + 10.0 * u(rng), 0.001 + 0.5 * u(rng)},
                ConstantIndex{{3.0 * u(rng), u(rng)}, {1.0 + u(rng), 0.3 * u(rng)}},
                Tabulated{{{0.05, {1.5, 0.1}}, {7.0, {2.5, 0.0}}}},
            };
            models.push_back(make_vegard(u(rng), models[0], models[1]));
            for (const auto& m : models) {
                const auto r = evaluate(m, e);
                CHECK(r.index.imag() >= 0.0);
                const cplx lhs = r.index * r.index, rhs = r.epsilon * r.mu;
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
            }
        }
    }

    TEST_CASE("drude passivity")
    {
        for (double e = 0.01; e < 20.0; e *= 1.3)
            CHECK(evaluate(Drude{9.04, 0.02125}, e).epsilon.imag() > 0.0);
    }

    TEST_CASE("vegard endpoints are bit exact")
    {
        const MaterialModel a = Tabulated{{{1.0, {2.3, 0.01}}, {3.0, {2.6, 0.02}}}};
        const MaterialModel b = ConstantIndex{{2.9, 0.7}};
        for (double e : {1.0, 1.7, 2.76, 3.0}) {
            CHECK(evaluate(make_vegard(0.0, a, b), e).index == evaluate(a, e).index);
            CHECK(evaluate(make_vegard(1.0, a, b), e).index == evaluate(b, e).index);
        }
        const auto mid = evaluate(make_vegard(0.25, a, b), 2.0).index;
        const auto expect = 0.75 * evaluate(a, 2.0).index + 0.25 * evaluate(b, 2.0).index;
        CHECK(std::abs(mid - expect) < 1e-15);
    }

    TEST_CASE("table interpolation")
    {
        const Tabulated t{{{1.0, {2.0, 0.1}}, {2.0, {3.0, 0.3}}, {4.0, {1.0, 0.0}}}};
        CHECK(evaluate(t, 1.0).index == cplx(2.0, 0.1));
        CHECK(evaluate(t, 2.0).index == cplx(3.0, 0.3));
        CHECK(evaluate(t, 4.0).index == cplx(1.0, 0.0));
        const auto mid = evaluate(t, 3.0).index;
        CHECK(mid.real() == doctest::Approx(2.0));
        CHECK(mid.imag() == doctest::Approx(0.15));
        CHECK_THROWS_AS(evaluate(t, 0.5), RangeError);
        CHECK_THROWS_AS(evaluate(t, 4.5), RangeError);
    }

    TEST_CASE("domain errors")
    {
        CHECK_THROWS_AS(evaluate(ConstantIndex{}, -1.0), DomainError);
        CHECK_THROWS_AS(evaluate(ConstantIndex{}, 0.0), DomainError);
        CHECK_FALSE(check_model(make_vegard(1.5, ConstantIndex{}, ConstantIndex{})).empty());
        CHECK_FALSE(check_model(Tabulated{{{1.0, {1.0, 0.0}}}}).empty());
        CHECK_FALSE(check_model(Tabulated{{{2.0, {1.0, 0.0}}, {1.0, {1.0, 0.0}}}}).empty());
    }

    TEST_CASE("table file format")
    {
        const auto t = parse_table("# header\n1.0 2.0 0.1\n\n  # indented comment\n2.0 2.5 0.2\n");
        REQUIRE(t.points.size() == 2);
        CHECK(t.points[1].n == cplx(2.5, 0.2));
        CHECK_THROWS_AS(parse_table("1.0 2.0 0.1\n1.0 2.0 0.1\n"), RangeError);
        CHECK_THROWS_AS(parse_table("1.0 2.0\n2.0 2.0 0.1\n"), RangeError);
        CHECK_THROWS_AS(parse_table("1.0 2.0 0.1\n"), RangeError);
    }

    TEST_CASE("bundled tables hit the reference indices at 2.76 eV")
    {
        const auto gan = load_table(QFED_DATA_DIR "/gan.txt");
        const auto inn = load_table(QFED_DATA_DIR "/inn.txt");
        const auto sapphire = load_table(QFED_DATA_DIR "/sapphire.txt");
        CHECK(evaluate(gan, 2.76).index == cplx(2.51, 0.0029));
        CHECK(evaluate(sapphire, 2.76).index == cplx(1.78, 0.0));
        const auto ingan = evaluate(make_vegard(0.15, gan, inn), 2.76).index;
        CHECK(std::abs(ingan - cplx(2.51, 0.094)) < 1e-4);
    }
}
