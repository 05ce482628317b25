#include <doctest.h>

#include <cmath>

#include "diskzero/verify.hpp"
#include "oracles.hpp"

using namespace diskzero;
using oracle::pi;

namespace {

Divisor random_divisor(oracle::Rng& rng, int n) {
    Divisor z;
    for (int i = 0; i < n; ++i) z.add(rng.uniform(0.3, 0.999), rng.uniform(-pi, pi), rng.integer(1, 3));
    return z;
}

std::vector<FamilyMember> ten_members() {
    std::vector<FamilyMember> family;
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
        family.push_back({GrowthGauge::power(p), PeriodicFunction::constant(1), 1});
        family.push_back({GrowthGauge::power(p), PeriodicFunction::truncated_cosine(1), 1});
    }
    return family;
}

}  // namespace

TEST_CASE("sequence generators") {
    const auto harmonic = SequenceGenerator::power_law(1);
    const auto d = harmonic.truncate(0.01);
    // r_k = 1 - 1/k < 0.99 for k = 1..99; k = 1 sits at the origin.
    CHECK(d.total_multiplicity() == 99);
    CHECK(d.multiplicity(DiskPoint::make(0, 0)) == 1);
    CHECK(d.multiplicity(DiskPoint::make(0.5, 0)) == 1);

    const auto geo = SequenceGenerator::geometric(0.5).truncate(1e-3);
    CHECK(geo.total_multiplicity() == 9);

    std::vector<double> thetas;
    SequenceGenerator::power_law(2, std::nullopt).for_each(0.01, [&](double, double th, int m) {
        CHECK(m == 1);
        thetas.push_back(th);
    });
    REQUIRE(thetas.size() == 9);
    CHECK(thetas[0] == doctest::Approx(2 * pi * 0.6180339887498949));

    CHECK_THROWS_AS(SequenceGenerator::power_law(0), std::invalid_argument);
    CHECK_THROWS_AS(SequenceGenerator::geometric(1), std::invalid_argument);
    CHECK_THROWS(SequenceGenerator::power_law(0.5).for_each(1e-9, [](double, double, int) {}, 1000));
}

TEST_CASE("validate_weights rejects non-class inputs") {
    CHECK_NOTHROW(validate_weights(GrowthGauge::power(2), PeriodicFunction::truncated_cosine(1), 1));
    try {
        validate_weights(GrowthGauge::linear(3), PeriodicFunction::constant(1), 1);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK_FALSE(e.gauge.normalized_ok);
        CHECK(e.trig.passed);
    }
    try {
        validate_weights(GrowthGauge::power(1), PeriodicFunction::truncated_cosine(3), 1);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.gauge.all_ok());
        CHECK_FALSE(e.trig.passed);
    }
    CHECK_THROWS_AS(validate_weights(GrowthGauge::power(1), PeriodicFunction::constant(2), 1), PreconditionError);
    const auto w = validate_weights(GrowthGauge::power(1), PeriodicFunction::constant(2), 1, true);
    CHECK(w.rescaled);
    CHECK(w.h(0.3) == doctest::Approx(1.0));

    CHECK_THROWS_AS(main_inequality_sides(Divisor{}, DiskCharge{}, GrowthGauge::linear(3),
                                          PeriodicFunction::constant(1), 1, 0.01),
                    PreconditionError);
    CHECK_THROWS_AS(main_inequality_sides(Divisor{}, DiskCharge{}, GrowthGauge::power(1),
                                          PeriodicFunction::constant(1), 1, 0.5),
                    std::invalid_argument);
}

TEST_CASE("main_inequality_sides examples") {
    const auto g1 = GrowthGauge::power(1);
    const auto one = PeriodicFunction::constant(1);
    Divisor u;
    u.add(0.8, 0);
    const auto rep = main_inequality_sides(u, DiskCharge({{0.9, 0, 1}}), g1, one, 1, 0.01);
    CHECK(rep.lhs == doctest::Approx(0.25));
    CHECK(rep.rhs_integral == doctest::Approx(1.0 / 9.0));
    CHECK(rep.gap == doctest::Approx(0.25 - 1.0 / 9.0));
    CHECK(rep.epsilon == 0.01);

    oracle::Rng rng(41);
    const auto z = random_divisor(rng, 30);
    const auto h = PeriodicFunction::truncated_cosine(1);
    const auto eq = main_inequality_sides(z, atomize(z), GrowthGauge::power(2), h, 1, 1e-3);
    CHECK(eq.gap == 0.0);

    Divisor half;
    int i = 0;
    for (const auto& [p, m] : z.entries())
        if (i++ % 2 == 0) half.add(p.r, p.theta, m);
    CHECK(main_inequality_sides(half, atomize(z), GrowthGauge::power(2), h, 1, 1e-3).gap <= 0);

    // Oracle: hand sum over 1/2 < r < 1 - eps.
    long double ref = 0;
    for (const auto& [p, m] : z.entries())
        if (p.r > 0.5 && p.r < 1 - 1e-3) ref += m * std::pow((1 - p.r) / p.r, 2) * std::max(std::cos(p.theta), 0.0);
    CHECK(eq.lhs == doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
}

TEST_CASE("equality case has zero gap for random divisors") {
    oracle::Rng rng(42);
    const std::vector<FamilyMember> family = ten_members();
    for (int trial = 0; trial < 30; ++trial) {
        const auto z = random_divisor(rng, rng.integer(1, 40));
        const auto& f = family[static_cast<std::size_t>(trial) % family.size()];
        const double eps = std::pow(10.0, -rng.uniform(1, 5));
        const auto rep = main_inequality_sides(z, atomize(z), f.g, f.h, f.rho, eps);
        CHECK(std::abs(rep.gap) <= 1e-9 * std::max(1.0, std::abs(rep.lhs)));
    }
}

TEST_CASE("empirical constant examples") {
    oracle::Rng rng(43);
    const auto family = ten_members();
    const auto z = random_divisor(rng, 25);
    CHECK(empirical_constant(z, atomize(z), family, 1e-3).value == 0.0);

    Divisor sub;
    int i = 0;
    for (const auto& [p, m] : z.entries())
        if (i++ % 3 == 0) sub.add(p.r, p.theta, m);
    CHECK(empirical_constant(sub, atomize(z), family, 1e-3).value == 0.0);

    // M atoms away from the boundary; u is the same set moved inward by 0.05.
    std::vector<Atom> atoms;
    Divisor shifted;
    for (int k = 0; k < 20; ++k) {
        const double r = rng.uniform(0.6, 0.95), th = rng.uniform(-pi, pi);
        atoms.push_back({r, th, 1});
        shifted.add(r - 0.05, th);
    }
    const auto c3 = empirical_constant(shifted, DiskCharge(atoms), family, 1e-3);
    const auto c4 = empirical_constant(shifted, DiskCharge(atoms), family, 1e-4);
    CHECK(c3.value > 0);
    CHECK(c3.cells.size() == 10);
    CHECK(std::abs(c4.value - c3.value) < 0.05 * c3.value);
    CHECK(c3.argmax < 10);
    CHECK(c3.cells[c3.argmax].gap == c3.value);

    auto bad = family;
    bad.push_back({GrowthGauge::linear(3), PeriodicFunction::constant(1), 1});
    try {
        empirical_constant(z, atomize(z), bad, 1e-3);
        FAIL("expected a member error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("family member 10") != std::string::npos);
    }
}

TEST_CASE("lhs grows with the divisor, the weight and the truncation") {
    oracle::Rng rng(44);
    const auto g = GrowthGauge::power(1.5);
    const auto w_small = validate_weights(g, PeriodicFunction::scaled(0.5, PeriodicFunction::truncated_cosine(1)), 1);
    const auto w_big = validate_weights(g, PeriodicFunction::truncated_cosine(1), 1);
    for (int trial = 0; trial < 20; ++trial) {
        auto z = random_divisor(rng, 15);
        const DiskCharge m({{rng.uniform(0.5, 0.99), rng.uniform(-pi, pi), 2}, {rng.uniform(0.5, 0.99), 0.0, 1}});
        const auto before = main_inequality_sides(z, m, w_big, 1e-3);
        z.add(rng.uniform(0.3, 0.99), rng.uniform(-pi, pi));
        CHECK(main_inequality_sides(z, m, w_big, 1e-3).lhs >= before.lhs);

        const auto small = main_inequality_sides(z, m, w_small, 1e-3);
        const auto big = main_inequality_sides(z, m, w_big, 1e-3);
        CHECK(small.lhs <= big.lhs);
        CHECK(small.rhs_integral <= big.rhs_integral);

        double prev_l = -1, prev_r = -1;
        for (double eps : {0.4, 0.1, 1e-2, 1e-3, 1e-4}) {
            const auto rep = main_inequality_sides(z, m, w_big, eps);
            CHECK(rep.lhs >= prev_l);
            CHECK(rep.rhs_integral >= prev_r);
            prev_l = rep.lhs;
            prev_r = rep.rhs_integral;
        }
    }
}

TEST_CASE("uniqueness audit: harmonic radii force zero") {
    const auto a = uniqueness_audit(SequenceGenerator::power_law(1), DiskCharge{}, GrowthGauge::power(1),
                                    PeriodicFunction::constant(1));
    CHECK(a.classification == Classification::ForcesZero);
    CHECK(a.zeros_grow);
    CHECK(a.majorant_stalls);
    REQUIRE(a.epsilons.size() == 20);
    CHECK(a.epsilons[0] == 0.5);
    CHECK(a.epsilons.back() == std::ldexp(1.0, -20));
    for (double v : a.majorant_partials) CHECK(v == 0.0);
    // Sum of 1/k over 2 < k < 2^j is about (j - 1) log 2 + const.
    const double slope = (a.zero_partials[19] - a.zero_partials[9]) / 10.0;
    CHECK(slope == doctest::Approx(std::log(2.0)).epsilon(1e-3));
}

TEST_CASE("uniqueness audit: squared radii are inconclusive") {
    const auto a = uniqueness_audit(SequenceGenerator::power_law(2), DiskCharge{}, GrowthGauge::power(1),
                                    PeriodicFunction::constant(1));
    CHECK(a.classification == Classification::Inconclusive);
    CHECK_FALSE(a.zeros_grow);
    CHECK(a.zero_partials.back() < pi * pi / 6);
    // Frozen: sum of 1/k^2 over 2 <= k < 1024, the points strictly inside (1/2, 1 - 2^-20).
    long double ref = 0;
    for (int k = 2; k < 1024; ++k) ref += 1.0L / (static_cast<long double>(k) * k);
    CHECK(a.zero_partials.back() == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("uniqueness audit: a boundary-heavy majorant is inconclusive") {
    const auto one = PeriodicFunction::constant(1);
    const DiskCharge m({}, ProductDensity{RadialProfile::boundary_power(1, 2), one});
    const auto a = uniqueness_audit(SequenceGenerator::power_law(1), m, GrowthGauge::power(1), one);
    CHECK(a.classification == Classification::Inconclusive);
    CHECK_FALSE(a.majorant_stalls);
    // Integral of 2(1 - t)/(1 - t)^2 over (1/2, 1 - eps) is 2 log(1/(2 eps)).
    for (std::size_t j = 0; j < a.epsilons.size(); ++j)
        CHECK(a.majorant_partials[j] == doctest::Approx(2 * std::log(0.5 / a.epsilons[j])).epsilon(1e-6).scale(1e-6));
}

TEST_CASE("uniqueness partials are nondecreasing") {
    oracle::Rng rng(45);
    for (int trial = 0; trial < 10; ++trial) {
        const double alpha = rng.uniform(0.5, 3);
        const auto h = PeriodicFunction::truncated_cosine(rng.uniform(0.5, 3));
        const DiskCharge m({{0.7, 0.1, 1}, {0.95, 2.0, 0.5}},
                           ProductDensity{RadialProfile::boundary_power(0.3, rng.uniform(0, 1.5)), h});
        const auto a = uniqueness_audit(SequenceGenerator::power_law(alpha, std::nullopt), m,
                                        GrowthGauge::power(rng.uniform(1, 3)), h, {12, 3, 1e-3});
        for (std::size_t j = 1; j < a.epsilons.size(); ++j) {
            CHECK(a.zero_partials[j] >= a.zero_partials[j - 1]);
            CHECK(a.majorant_partials[j] >= a.majorant_partials[j - 1]);
        }
    }
}

TEST_CASE("uniqueness audit preconditions") {
    const auto z = SequenceGenerator::power_law(1);
    const auto one = PeriodicFunction::constant(1);
    CHECK_THROWS_AS(uniqueness_audit(z, DiskCharge{}, GrowthGauge::power(1), one, {4, 3, 1e-3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(uniqueness_audit(z, DiskCharge{}, GrowthGauge::power(1), PeriodicFunction::constant(0)),
                    std::invalid_argument);
}

TEST_CASE("blaschke partials") {
    const auto harm = blaschke_partials(SequenceGenerator::power_law(1), 16);
    const auto sq = blaschke_partials(SequenceGenerator::power_law(2), 16);
    REQUIRE(harm.size() == 16);
    CHECK(harm.back() - harm[7] > 5);
    CHECK(sq.back() < pi * pi / 6);
    for (std::size_t j = 1; j < 16; ++j) CHECK(harm[j] >= harm[j - 1]);
}
