#include <doctest.h>

#include <cmath>

#include "tcone/errors.hpp"
#include "tcone/scenarios.hpp"
#include "tcone/timewarp.hpp"

using namespace tcone;

TEST_CASE("unit speed gives identical warped and physical times") {
    const SampledSpeed s({0.0, 0.5, 1.0}, {1.0, 1.0, 1.0});
    const TimeWarp w = build_warp(s, 8);
    CHECK(w.dtau == 0.125);
    for (int n = 0; n <= 8; ++n) CHECK(w.t_hat[static_cast<std::size_t>(n)] == doctest::Approx(n * 0.125));
    CHECK(w(0.3) == doctest::Approx(0.3));
}

TEST_CASE("double speed halves the self-adaptive times") {
    const SampledSpeed s({0.0, 1.0}, {2.0, 2.0});
    const TimeWarp w = build_warp(s, 4);
    CHECK(w.total() == 2.0);
    for (int n = 0; n <= 4; ++n) {
        CHECK(w.t_hat[static_cast<std::size_t>(n)] == doctest::Approx(w.tau_knots[static_cast<std::size_t>(n)] / 2.0));
    }
}

TEST_CASE("warp is the composite trapezoid of rho and inverts exactly") {
    const SampledSpeed s({0.0, 1.0, 2.0, 4.0}, {1.0, 3.0, 2.0, 0.5});
    const TimeWarp w = build_warp(s, 16);
    CHECK(w.cumulative[1] == doctest::Approx(2.0));
    CHECK(w.cumulative[2] == doctest::Approx(4.5));
    CHECK(w.cumulative[3] == doctest::Approx(7.0));
    CHECK(w.t_hat.front() == 0.0);
    CHECK(w.t_hat.back() == 4.0);
    CHECK(w.tau_knots.back() == w.total());
    for (double t : {0.0, 0.2, 1.0, 1.7, 3.9, 4.0}) CHECK(invert_warp(w, w(t)) == doctest::Approx(t));
    for (std::size_t n = 1; n < w.t_hat.size(); ++n) CHECK(w.t_hat[n] > w.t_hat[n - 1]);
    CHECK_THROWS_AS(invert_warp(w, 7.5), RangeError);
    CHECK_THROWS_AS(w(4.5), RangeError);
}

TEST_CASE("too few warped steps is a configuration error") {
    const SampledSpeed s({0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(build_warp(s, 1), ConfigError);
}

TEST_CASE("warped source divides alpha by rho at the self-adaptive times") {
    const GridSpec g(1, {4, 1, 1}, 0.25);
    const SampledSpeed s({0.0, 1.0}, {2.0, 2.0});
    const Rate r(AnalyticRate{g, 1.0, "t", [](const Point&, double t) { return 1.0 + t; }});
    const TimeWarp w = build_warp(s, 4);
    const FieldSeries f = warped_source(r, s, w);
    CHECK(f.label == Quantity::F);
    for (std::size_t n = 0; n < f.n_levels(); ++n) {
        CHECK(f.stamps[n] == w.tau_knots[n]);
        CHECK(f.levels[n][2] == doctest::Approx((1.0 + w.t_hat[n]) / 2.0));
    }
}

TEST_CASE("sampled rate must share the speed knots") {
    const GridSpec g(1, {4, 1, 1}, 0.25);
    const SampledSpeed s({0.0, 1.0}, {1.0, 1.0});
    const Rate r(SampledRate(g, {0.0, 0.5, 1.0}, {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}}));
    CHECK_THROWS_AS(warped_source(r, s, build_warp(s, 4)), GridMismatchError);
}

TEST_CASE("fast early growth accumulates knots near t = 0") {
    const SampledSpeed s = scenario_fig2_speed(512);
    const TimeWarp w = build_warp(s, 64);
    for (std::size_t n = 2; n < w.t_hat.size(); ++n) {
        CHECK(w.t_hat[n] - w.t_hat[n - 1] > w.t_hat[n - 1] - w.t_hat[n - 2]);
    }
}
