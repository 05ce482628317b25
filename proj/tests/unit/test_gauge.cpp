#include <doctest.h>

#include <cmath>

#include "diskzero/gauge.hpp"
#include "oracles.hpp"

using namespace diskzero;

namespace {

// Convex piecewise-linear gauge through (0,0) with random increasing slopes.
GrowthGauge random_convex_piecewise(oracle::Rng& rng) {
    const int k = rng.integer(1, 6);
    std::vector<std::pair<double, double>> pts = {{0.0, 0.0}};
    double x = 0, y = 0, slope = rng.uniform(0.0, 0.5);
    for (int i = 0; i < k; ++i) {
        const double dx = rng.uniform(0.05, 0.6);
        x += dx;
        y += slope * dx;
        pts.emplace_back(x, y);
        slope += rng.uniform(0.0, 1.0);
    }
    return GrowthGauge::piecewise(pts);
}

}  // namespace

TEST_CASE("eval_gauge examples") {
    CHECK(eval_gauge(GrowthGauge::power(2), 0.5) == 0.25);
    CHECK(eval_gauge(GrowthGauge::power(1), 1.0) == 1.0);
    CHECK(eval_gauge(GrowthGauge::linear(2), 0.0) == 0.0);
    CHECK_THROWS_AS(eval_gauge(GrowthGauge::power(2), -0.1), std::invalid_argument);
    CHECK_THROWS_AS(GrowthGauge::power(0.5), std::invalid_argument);
    CHECK_THROWS_AS(GrowthGauge::linear(0.0), std::invalid_argument);
}

TEST_CASE("piecewise gauges interpolate and extend with the last slope") {
    const auto g = GrowthGauge::piecewise({{0, 0}, {0.5, 0.1}, {1, 1}});
    CHECK(g(0.25) == doctest::Approx(0.05));
    CHECK(g(0.75) == doctest::Approx(0.55));
    CHECK(g(2.0) == doctest::Approx(2.8));
    CHECK_THROWS_AS(GrowthGauge::piecewise({{0.1, 0}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(GrowthGauge::piecewise({{0, 0}, {1, 1}, {1, 2}}), std::invalid_argument);
    CHECK(g.breakpoints() == std::vector<double>{0.5});
}

TEST_CASE("check_gauge_class examples") {
    const auto p2 = check_gauge_class(GrowthGauge::power(2));
    CHECK(p2.convex_ok);
    CHECK(p2.zero_at_zero_ok);
    CHECK(p2.normalized_ok);

    const auto l3 = check_gauge_class(GrowthGauge::linear(3));
    CHECK(l3.convex_ok);
    CHECK(l3.zero_at_zero_ok);
    CHECK_FALSE(l3.normalized_ok);
    CHECK(l3.value_at_one == 3.0);

    const auto bent = check_gauge_class(GrowthGauge::piecewise({{0, 0}, {0.5, 0.5}, {1.5, 1.0}}));
    CHECK_FALSE(bent.convex_ok);
    CHECK(bent.max_convexity_violation > 0);
}

TEST_CASE("check_gx examples") {
    CHECK(check_gx(GrowthGauge::power(2)).derivative_bound_ok);
    CHECK(check_gx(GrowthGauge::power(2)).increasing_ok);
    const auto lin = check_gx(GrowthGauge::power(1));
    CHECK(lin.derivative_bound_ok);
    CHECK(lin.increasing_ok);

    const auto g = GrowthGauge::piecewise({{0, 0}, {0.5, 0.1}, {1, 1}});
    const auto r = check_gx(g);
    CHECK(r.derivative_bound_ok);
    CHECK(r.increasing_ok);
    // Brute-force both sides on the same 256 log-spaced points from closed-form slopes.
    const auto mesh = gx_mesh(256);
    REQUIRE(mesh.size() == 256);
    for (double x : mesh) {
        const double slope = x < 0.5 ? 0.2 : 1.8;
        const double value = x < 0.5 ? 0.2 * x : 0.1 + 1.8 * (x - 0.5);
        CHECK(slope >= value / x - 1e-12);
    }
}

TEST_CASE("g(x)/x is nondecreasing for class gauges") {
    oracle::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto g = random_convex_piecewise(rng);
        REQUIRE(check_gauge_class(g).convex_ok);
        double prev = 0;
        for (double x : gx_mesh(256)) {
            const double q = g(x) / x;
            CHECK(q >= prev - 1e-12);
            prev = q;
        }
    }
}

TEST_CASE("gauges are monotone") {
    oracle::Rng rng(4);
    std::vector<GrowthGauge> gs = {GrowthGauge::power(1), GrowthGauge::power(2.5), GrowthGauge::linear(0.3)};
    for (int i = 0; i < 20; ++i) gs.push_back(random_convex_piecewise(rng));
    for (const auto& g : gs)
        for (int k = 0; k < 200; ++k) {
            const double a = rng.uniform(0, 3), b = rng.uniform(0, 3);
            CHECK(g(std::min(a, b)) <= g(std::max(a, b)));
        }
}

TEST_CASE("g((1-t)/t) <= g(2(1-t)) on [1/2, 1)") {
    oracle::Rng rng(5);
    std::vector<GrowthGauge> gs = {GrowthGauge::power(1), GrowthGauge::power(3), GrowthGauge::linear(2)};
    for (int i = 0; i < 20; ++i) gs.push_back(random_convex_piecewise(rng));
    for (const auto& g : gs)
        for (int k = 0; k < 200; ++k) {
            const double t = rng.uniform(0.5, 1.0);
            CHECK(g((1 - t) / t) <= g(2 * (1 - t)) + 1e-15);
        }
}
