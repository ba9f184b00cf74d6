#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "tcone/brackets.hpp"
#include "tcone/errors.hpp"
#include "tcone/scenarios.hpp"
#include "tcone/solvers.hpp"

using namespace tcone;

namespace {

FieldSeries make_source(const GridSpec& g, int n_tau, double dtau,
                        const std::function<double(const Point&, double)>& fn) {
    FieldSeries f(g, Quantity::F, static_cast<std::size_t>(n_tau) + 1);
    for (int n = 0; n <= n_tau; ++n) {
        const double tau = n * dtau;
        f.stamps[static_cast<std::size_t>(n)] = tau;
        for (std::size_t i = 0; i < g.size(); ++i) f.levels[static_cast<std::size_t>(n)][i] = fn(g.coords(i), tau);
    }
    return f;
}

double bump(const Point& x, double tau) {
    const double two_pi = 2.0 * std::numbers::pi;
    return (0.2 + std::exp(std::cos(two_pi * x[0]) + std::sin(two_pi * x[1]) * std::cos(two_pi * x[2]))) *
           (1.0 + tau);
}

}  // namespace

TEST_CASE("stability check") {
    CHECK(check_cfl(SchemeParams::make(0.25, 0.1, 0.01), 3).accepted);
    CHECK(check_cfl(SchemeParams::make(0.5, 0.1, 0.01), 3).accepted);
    CHECK(check_cfl(SchemeParams::make(0.0, 0.1, 0.2), 3).accepted);
    CHECK_FALSE(check_cfl(SchemeParams::make(0.0, 0.1, 0.1), 2).accepted);
    CHECK(check_cfl(SchemeParams::make(0.0, 0.1, 0.1), 1).accepted);
    CHECK_THROWS_AS(require_cfl(SchemeParams::make(0.1, 0.1, 0.1), 3), CflError);
    CHECK_THROWS_AS(SchemeParams::make(0.6, 0.1, 0.1).validate(), ConfigError);
    CHECK_THROWS_AS(SchemeParams::make(0.25, 0.0, 0.1).validate(), ConfigError);
    CHECK(parse_start_rule("paper") == StartRule::Paper);
    CHECK_THROWS_AS(parse_start_rule("euler"), ConfigError);
}

TEST_CASE("CFL rejection happens before solving") {
    const GridSpec g = GridSpec::cube(3, 4, 0.1);
    const FieldSeries f = make_source(g, 4, 0.1, [](const Point&, double) { return 1.0; });
    CHECK_THROWS_AS(solve(f, SchemeParams::make(0.0, 0.1, 0.1), {}), CflError);
}

TEST_CASE("zero source gives zero in every dimension") {
    for (int d = 1; d <= 3; ++d) {
        const GridSpec g = GridSpec::cube(d, 6, 0.1);
        const FieldSeries f = make_source(g, 8, 0.05, [](const Point&, double) { return 0.0; });
        const SolveReport r = solve(f, SchemeParams::make(0.25, 0.05, 0.1), {});
        for (const auto& lvl : r.u0.levels) {
            for (double v : lvl) CHECK(v == 0.0);
        }
    }
}

TEST_CASE("1D homogeneous closed forms are exact for both start rules") {
    const GridSpec g = GridSpec::cube(1, 8, 0.125);
    const double dtau = 1.0 / 64.0;
    const FieldSeries f = make_source(g, 64, dtau, [](const Point&, double) { return 1.0; });
    const SolveReport taylor = solve_1d(f, SchemeParams::make(0.25, dtau, 0.125, StartRule::Taylor));
    const SolveReport paper = solve_1d(f, SchemeParams::make(0.25, dtau, 0.125, StartRule::Paper));
    for (int n = 0; n <= 64; ++n) {
        const auto sn = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(taylor.u0.levels[sn][i] == n * n * dtau * dtau);
            CHECK(paper.u0.levels[sn][i] == n * (n - 1) * dtau * dtau);
        }
    }
}

TEST_CASE("2D lateral source of a constant is 2 pi tau") {
    const GridSpec g = GridSpec::cube(2, 8, 0.125);
    const FieldSeries f = make_source(g, 16, 0.0625, [](const Point&, double) { return 1.0; });
    const FieldSeries u1 = lateral_source_2d(f, 0.0625, 32);
    CHECK(u1.label == Quantity::U1);
    for (int n = 0; n <= 16; ++n) {
        CHECK(u1.levels[static_cast<std::size_t>(n)][5] ==
              doctest::Approx(2.0 * std::numbers::pi * n * 0.0625).epsilon(1e-13));
    }
    CHECK_THROWS_AS(lateral_source_2d(f, 0.0625, 3), ConfigError);
}

TEST_CASE("2D lateral source agrees with the polar bracket evaluation") {
    const double two_pi = 2.0 * std::numbers::pi;
    const ModeField field(1.0, 0.5, {two_pi, two_pi, 0.0}, {0.3, 0.2, 0.0}, 0.5);
    const GridSpec g = GridSpec::cube(2, 64, 1.0 / 64.0);
    const int n_tau = 32;
    const double dtau = 1.0 / 64.0;
    const FieldSeries f = make_source(g, n_tau, dtau, [&field](const Point& x, double tau) {
        return field(std::span<const double>(x.data(), 2), tau);
    });
    const FieldSeries u1 = lateral_source_2d(f, dtau, 128);
    const std::size_t idx = g.flat(20, 40);
    const Point x = g.coords(idx);
    const double tau = n_tau * dtau;
    const double ref = eval_bracket({BracketKind::Surface, 1, 0, 2}, field, std::span<const double>(x.data(), 2),
                                    tau, ConeQuadSpec{64, 64, 128});
    CHECK(u1.levels.back()[idx] == doctest::Approx(ref).epsilon(5e-3));
}

TEST_CASE("constant rates approach the closed-form cone measures") {
    const double dtau = 1.0 / 64.0;
    {
        const GridSpec g = GridSpec::cube(2, 8, 0.125);
        const FieldSeries f = make_source(g, 64, dtau, [](const Point&, double) { return 1.0; });
        const SolveReport r = solve_2d(f, SchemeParams::make(0.25, dtau, 0.125), SolveOptions{1, 64});
        CHECK(r.u0.levels.back()[3] == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-3));
    }
    {
        const GridSpec g = GridSpec::cube(3, 4, 0.25);
        const FieldSeries f = make_source(g, 64, dtau, [](const Point&, double) { return 1.0; });
        const SolveReport r = solve_3d(f, SchemeParams::make(0.25, dtau, 0.25));
        REQUIRE(r.u1.has_value());
        CHECK(r.u1->levels.back()[7] == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
        CHECK(r.u0.levels.back()[7] == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-3));
    }
}

TEST_CASE("scheme residual is at roundoff in every dimension") {
    for (int d = 1; d <= 3; ++d) {
        const int n = d == 3 ? 8 : 16;
        const GridSpec g = GridSpec::cube(d, n, 1.0 / n);
        const double dtau = 0.05;
        const FieldSeries f = make_source(g, 12, dtau, bump);
        for (double eta : {0.25, 0.5}) {
            const SchemeParams p = SchemeParams::make(eta, dtau, 1.0 / n);
            const SolveReport r = solve(f, p, SolveOptions{1, 16});
            const FieldSeries& src = d == 1 ? f : *r.u1;
            const double factor = d == 2 ? 1.0 : 2.0;
            CHECK(scheme_residual(r.u0, scaled_series(src, factor, Quantity::F), p) <= 1e-12);
            if (d == 3) CHECK(scheme_residual(*r.u1, scaled_series(f, 4.0 * std::numbers::pi, Quantity::F), p) <= 1e-12);
        }
    }
}

TEST_CASE("spatially constant sources keep every level exactly constant") {
    for (int d = 1; d <= 3; ++d) {
        const GridSpec g = GridSpec::cube(d, 6, 1.0 / 6.0);
        const FieldSeries f = make_source(g, 10, 0.03, [](const Point&, double t) { return 0.7 + std::sin(9.0 * t); });
        const SolveReport r = solve(f, SchemeParams::make(0.25, 0.03, 1.0 / 6.0), SolveOptions{1, 16});
        for (const auto& lvl : r.u0.levels) {
            for (double v : lvl) CHECK(v == lvl.front());
        }
    }
}

TEST_CASE("lattice shifts commute with the solver exactly") {
    for (int d = 1; d <= 3; ++d) {
        const int n = 8;
        const GridSpec g = GridSpec::cube(d, n, 1.0 / n);
        const FieldSeries f = make_source(g, 8, 0.04, bump);
        const std::array<int, 3> shift{3, 5, 2};
        FieldSeries fs = f;
        auto shifted_index = [&](std::size_t i) {
            auto ijk = g.unflat(i);
            for (int l = 0; l < d; ++l) ijk[l] = (ijk[l] + shift[l]) % n;
            return g.flat(ijk[0], ijk[1], ijk[2]);
        };
        for (std::size_t lv = 0; lv < f.n_levels(); ++lv) {
            for (std::size_t i = 0; i < g.size(); ++i) fs.levels[lv][shifted_index(i)] = f.levels[lv][i];
        }
        const SchemeParams p = SchemeParams::make(0.25, 0.04, 1.0 / n);
        const SolveReport a = solve(f, p, SolveOptions{1, 16});
        const SolveReport b = solve(fs, p, SolveOptions{1, 16});
        for (std::size_t lv = 0; lv < f.n_levels(); ++lv) {
            for (std::size_t i = 0; i < g.size(); ++i) CHECK(b.u0.levels[lv][shifted_index(i)] == a.u0.levels[lv][i]);
        }
    }
}

TEST_CASE("thread count never changes results") {
    for (int d = 1; d <= 3; ++d) {
        const GridSpec g = GridSpec::cube(d, 8, 0.125);
        const FieldSeries f = make_source(g, 8, 0.04, bump);
        const SchemeParams p = SchemeParams::make(0.25, 0.04, 0.125);
        const SolveReport a = solve(f, p, SolveOptions{1, 16});
        const SolveReport b = solve(f, p, SolveOptions{3, 16});
        CHECK(a.u0 == b.u0);
    }
}

TEST_CASE("u is nondecreasing for nonnegative rates") {
    const Scenario s = scenario_bump_3d(8, 4);
    const GridSpec g = s.rate.grid();
    const FieldSeries f = make_source(g, 16, 0.025, [&s](const Point& x, double t) { return s.rate.value(x, t); });
    const SolveReport r = solve_3d(f, SchemeParams::make(0.25, 0.025, g.step()));
    for (std::size_t n = 1; n < r.u0.n_levels(); ++n) {
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.u0.levels[n][i] >= r.u0.levels[n - 1][i] - 1e-12);
    }
}

TEST_CASE("eta only changes the answer at second order") {
    auto diff = [](int n_tau) {
        const GridSpec g = GridSpec::cube(1, 64, 1.0 / 64.0);
        const double dtau = 0.5 / n_tau;
        const FieldSeries f = make_source(g, n_tau, dtau, bump);
        const SolveReport a = solve_1d(f, SchemeParams::make(0.25, dtau, g.step()));
        const SolveReport b = solve_1d(f, SchemeParams::make(0.5, dtau, g.step()));
        double m = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(a.u0.levels.back()[i] - b.u0.levels.back()[i]));
        return m;
    };
    CHECK(diff(16) / diff(32) > 3.5);
}

TEST_CASE("unwarp relabels levels with the self-adaptive times") {
    const SampledSpeed speed({0.0, 1.0}, {2.0, 2.0});
    const TimeWarp w = build_warp(speed, 8);
    const GridSpec g = GridSpec::cube(1, 8, 0.25);
    const FieldSeries f = make_source(g, 8, w.dtau, [](const Point&, double) { return 1.0; });
    const SolveReport r = solve_1d(f, SchemeParams::make(0.25, w.dtau, 0.25));
    const FieldSeries u = unwarp(r, w);
    CHECK(u.label == Quantity::u);
    CHECK(u.levels == r.u0.levels);
    for (std::size_t n = 0; n < u.n_levels(); ++n) CHECK(u.stamps[n] == doctest::Approx(w.tau_knots[n] / 2.0));
    CHECK_THROWS_AS(unwarp(r, build_warp(speed, 4)), GridMismatchError);
}

TEST_CASE("solver entry points check the grid dimension") {
    const FieldSeries f2 = make_source(GridSpec::cube(2, 4, 0.25), 4, 0.1, [](const Point&, double) { return 1.0; });
    CHECK_THROWS_AS(solve_1d(f2, SchemeParams::make(0.25, 0.1, 0.25)), GridMismatchError);
    CHECK_THROWS_AS(solve_3d(f2, SchemeParams::make(0.25, 0.1, 0.25)), GridMismatchError);
    CHECK_THROWS_AS(solve_2d(f2, SchemeParams::make(0.25, 0.1, 0.5)), ConfigError);
}
