#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tcone/cone_oracle.hpp"
#include "tcone/errors.hpp"
#include "tcone/scenarios.hpp"
#include "tcone/timewarp.hpp"

using namespace tcone;

TEST_CASE("1D preset values") {
    const Scenario s = scenario_1d();
    CHECK(eval_speed(s.speed, 0.0) == doctest::Approx(0.5));
    CHECK(eval_speed(s.speed, 1.0) == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(eval_rate(s.rate, Point{std::numbers::pi / 2, 0, 0}, 0.0) == doctest::Approx(2.0 * std::exp(1.0)));
    CHECK(s.rate.grid().period(0) == doctest::Approx(std::numbers::pi));
    CHECK(s.rate.horizon() == 1.0);
    const GridSpec& g = s.rate.grid();
    for (std::size_t i = 0; i < g.size(); i += 7) CHECK(eval_rate(s.rate, g.coords(i), 0.5) >= 0.0);
}

TEST_CASE("constant preset") {
    const Scenario s = scenario_constant(2.0, 0.5, 2, 8);
    CHECK(s.rate.horizon() == doctest::Approx(2.0));
    CHECK(build_warp(s.speed, 4).total() == doctest::Approx(1.0));
    CHECK_THROWS_AS(scenario_constant(-1.0, 1.0, 3), ConfigError);
    CHECK_THROWS_AS(scenario_constant(1.0, 0.0, 3), ConfigError);
    // Cone measure reduces to the closed form: alpha0 rho0 t^2 in 1D.
    const Scenario s1 = scenario_constant(2.0, 0.5, 1, 8);
    CHECK(direct_u(s1.rate, build_warp(s1.speed, 8), Point{}, 1.0, ConeQuadSpec{}) == doctest::Approx(1.0));
}

TEST_CASE("2D preset starts from zero and is reproducible per seed") {
    const Scenario a = scenario_2d(7, 32, 20);
    const Scenario b = scenario_2d(7, 32, 20);
    const Scenario c = scenario_2d(8, 32, 20);
    const GridSpec& g = a.rate.grid();
    CHECK(eval_speed(a.speed, 0.0) == doctest::Approx(0.02));
    CHECK(a.rate.horizon() == 50.0);
    bool differs = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.coords(i);
        CHECK(eval_rate(a.rate, x, 0.0) == 0.0);
        CHECK(eval_rate(a.rate, x, 30.0) == eval_rate(b.rate, x, 30.0));
        differs = differs || eval_rate(a.rate, x, 30.0) != eval_rate(c.rate, x, 30.0);
    }
    CHECK(differs);
}

TEST_CASE("hexagon field shape") {
    const GridSpec g = GridSpec::cube(2, 64, 1.0 / 64.0);
    const auto f = hexagon_field(g, 3);
    CHECK(f == hexagon_field(g, 3));
    const double lo = *std::min_element(f.begin(), f.end());
    const double hi = *std::max_element(f.begin(), f.end());
    CHECK(lo >= 0.0);
    // Noise is truncated at +-100 before scaling by 0.01, so nothing exceeds motif + 1.
    CHECK(hi <= 2.0);
    // Heavy-tailed noise shows up as outliers well above the motif peak.
    CHECK(hi > 1.1);
    // Motif and background: a fraction of points is near the background level.
    const auto low = std::count_if(f.begin(), f.end(), [](double v) { return v < 0.2; });
    CHECK(low > 0);
    CHECK(low < static_cast<long>(f.size()));
}

TEST_CASE("fast-start speed and its warp") {
    const SampledSpeed s = scenario_fig2_speed(512);
    CHECK(s.knots().size() == 512);
    CHECK(eval_speed(s, 0.0) == doctest::Approx(10.0));
    CHECK(eval_speed(s, 0.99) == doctest::Approx(1.0).epsilon(1e-4));
    for (std::size_t i = 1; i < s.values().size(); ++i) CHECK(s.values()[i] < s.values()[i - 1]);
    CHECK(fig2_warp_exact(0.0) == 0.0);
    CHECK(fig2_warp_exact(0.99) == doctest::Approx(1.8));
}

TEST_CASE("3D bump preset") {
    const Scenario s = scenario_bump_3d(16, 4);
    CHECK(eval_rate(s.rate, Point{0.5, 0.5, 0.5}, 0.0) == doctest::Approx(1.2));
    CHECK(eval_rate(s.rate, Point{0.5, 0.5, 0.5}, 0.4) == doctest::Approx(1.2 * 1.4));
    CHECK(eval_speed(s.speed, 0.2) == 1.0);
    CHECK(s.rate.horizon() == doctest::Approx(0.4));
}

TEST_CASE("preset dispatch") {
    for (const auto& name : scenario_names()) {
        ScenarioSpec spec;
        spec.name = name;
        spec.n = name == "paper-2d" ? 16 : 8;
        spec.n_t = 8;
        CHECK_NOTHROW(make_scenario(spec));
    }
    ScenarioSpec bad;
    bad.name = "hexagons";
    CHECK_THROWS_AS(make_scenario(bad), ConfigError);
}
