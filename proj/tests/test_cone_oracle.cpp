#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tcone/cone_oracle.hpp"
#include "tcone/errors.hpp"
#include "tcone/scenarios.hpp"

using namespace tcone;

TEST_CASE("constant rate reproduces the closed-form cone measure") {
    for (int d = 1; d <= 3; ++d) {
        const Scenario s = scenario_constant(1.5, 0.8, d, 8, 1.0);
        const TimeWarp w = build_warp(s.speed, 4);
        const double u = direct_u(s.rate, w, Point{0.1, 0.2, 0.3}, 0.9, ConeQuadSpec{});
        CHECK(u == doctest::Approx(jmak_u(1.5, 0.8, 0.9, d)).epsilon(1e-3));
    }
}

TEST_CASE("closed-form cone measure in one dimension") {
    // alpha0 = 2, rho0 = 0.5: u(t) = t^2.
    const Scenario s = scenario_constant(2.0, 0.5, 1, 8, 1.0);
    const TimeWarp w = build_warp(s.speed, 4);
    CHECK(direct_u(s.rate, w, Point{0.4, 0, 0}, 0.7, ConeQuadSpec{}) == doctest::Approx(0.49).epsilon(1e-12));
    CHECK(jmak_u(2.0, 0.5, 0.7, 1) == doctest::Approx(0.49));
}

TEST_CASE("oracle is linear in alpha and nondecreasing in t") {
    const Scenario s = scenario_bump_3d(8, 4);
    const GridSpec g = s.rate.grid();
    const Rate doubled(AnalyticRate{g, 0.4, "2x", [&s](const Point& x, double t) { return 2.0 * s.rate.value(x, t); }});
    const TimeWarp w = build_warp(s.speed, 4);
    const ConeQuadSpec q{16, 16, 16};
    const Point x{0.45, 0.5, 0.55};
    const double u = direct_u(s.rate, w, x, 0.3, q);
    CHECK(direct_u(doubled, w, x, 0.3, q) == doctest::Approx(2.0 * u).epsilon(1e-13));
    double prev = 0.0;
    for (double t : {0.0, 0.05, 0.1, 0.2, 0.3, 0.4}) {
        const double v = direct_u(s.rate, w, x, t, q);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("oracle preconditions") {
    const Scenario s = scenario_constant(1.0, 1.0, 2, 8, 1.0);
    const TimeWarp w = build_warp(s.speed, 4);
    CHECK_THROWS_AS(cone_radius(w, 0.2, 0.3), ArgumentError);
    CHECK(cone_radius(w, 0.5, 0.2) == doctest::Approx(0.3));
    CHECK_THROWS_AS(direct_u(s.rate, w, Point{}, 1.5, ConeQuadSpec{}), RangeError);
    CHECK_THROWS_AS(direct_u(s.rate, w, Point{}, 0.5, ConeQuadSpec{1, 8, 8}), ConfigError);
    CHECK(direct_u(s.rate, w, Point{}, 0.0, ConeQuadSpec{}) == 0.0);
    CHECK_THROWS_AS(phase_fraction(-1e-3), ArgumentError);
    CHECK(phase_fraction(0.0) == 0.0);
    CHECK(phase_fraction(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
}

TEST_CASE("cones wider than half a period are flagged") {
    const Scenario s = scenario_constant(1.0, 1.0, 2, 8, 1.0);
    const TimeWarp w = build_warp(s.speed, 4);
    CHECK_FALSE(direct_u_report(s.rate, w, Point{}, 0.4, ConeQuadSpec{8, 8, 8}).wraps);
    CHECK(direct_u_report(s.rate, w, Point{}, 0.6, ConeQuadSpec{8, 8, 8}).wraps);
}

TEST_CASE("batch evaluation does not depend on the thread count") {
    const Scenario s = scenario_1d(64, 32);
    const TimeWarp w = build_warp(s.speed, 16);
    std::vector<SamplePoint> pts;
    for (int i = 0; i < 9; ++i) pts.push_back(SamplePoint{Point{0.3 * i, 0, 0}, 0.1 * (i + 1)});
    const auto a = direct_u_batch(s.rate, w, pts, ConeQuadSpec{32, 32, 2}, 1);
    const auto b = direct_u_batch(s.rate, w, pts, ConeQuadSpec{32, 32, 2}, 4);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(a[i].value == b[i].value);
}
