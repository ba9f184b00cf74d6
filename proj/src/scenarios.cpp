#include "tcone/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "tcone/errors.hpp"

namespace tcone {

namespace {

std::vector<double> uniform_knots(double horizon, int panels) {
    if (panels < 1) throw ConfigError("need at least one speed panel");
    std::vector<double> t(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) {
        t[static_cast<std::size_t>(i)] = (i == panels) ? horizon : horizon * i / panels;
    }
    return t;
}

template <typename Fn>
SampledSpeed sample_speed(const std::vector<double>& knots, Fn&& rho) {
    std::vector<double> v(knots.size());
    std::transform(knots.begin(), knots.end(), v.begin(), rho);
    return SampledSpeed(knots, std::move(v));
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"const", "paper-1d", "paper-2d", "fig2-speed", "bump-3d"};
    return names;
}

Scenario scenario_constant(double alpha0, double rho0, int dim, int n, double horizon) {
    if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) throw ConfigError("alpha0 must be >= 0");
    if (!(rho0 > 0.0) || !std::isfinite(rho0)) throw ConfigError("rho0 must be > 0");
    const double T = horizon > 0.0 ? horizon : 1.0 / rho0;
    const GridSpec g = GridSpec::cube(dim, n, 1.0 / n);
    AnalyticRate rate{g, T, "const", [alpha0](const Point&, double) { return alpha0; }};
    return {"const", Rate(std::move(rate)), sample_speed(uniform_knots(T, 1), [rho0](double) { return rho0; })};
}

Scenario scenario_1d(int n, int n_t) {
    const double T = 1.0;
    const GridSpec g = GridSpec::cube(1, n, std::numbers::pi / n);
    AnalyticRate rate{g, T, "paper-1d", [](const Point& x, double t) {
                          const double d = x[0] - std::numbers::pi / 2.0;
                          return std::exp(-0.5 * d * d) * (1.0 - std::cos(10.0 * x[0])) * std::exp(1.0 - t / 10.0);
                      }};
    return {"paper-1d", Rate(std::move(rate)),
            sample_speed(uniform_knots(T, n_t), [](double t) { return 0.5 / std::sqrt(t + 1.0); })};
}

std::vector<double> hexagon_field(const GridSpec& grid, std::uint64_t seed) {
    if (grid.dim() != 2) throw ConfigError("hexagon field needs a 2D grid");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    // Integer wave numbers keep the pattern periodic on the unit torus.
    constexpr std::array<std::array<double, 2>, 3> waves{{{4.0, 0.0}, {-2.0, 3.0}, {-2.0, -3.0}}};
    std::mt19937_64 gen(seed);
    std::vector<double> f(grid.size());
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const Point x = grid.coords(idx);
        double s = 0.0;
        for (const auto& k : waves) s += std::cos(two_pi * (k[0] * x[0] + k[1] * x[1]));
        const double motif = std::max(0.0, s - 1.0) / 2.0;
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double cauchy = std::clamp(std::tan(std::numbers::pi * (u - 0.5)), -100.0, 100.0);
        f[idx] = std::max(0.0, 0.05 + 0.95 * motif + 0.01 * cauchy);
    }
    return f;
}

Scenario scenario_2d(std::uint64_t seed, int n, int n_t) {
    const double T = 50.0;
    const GridSpec g = GridSpec::cube(2, n, 1.0 / n);
    auto f = std::make_shared<const std::vector<double>>(hexagon_field(g, seed));
    AnalyticRate rate{g, T, "paper-2d", [g, f](const Point& x, double t) {
                          return interp_lattice(g, *f, x) * -std::expm1(-t / 10.0);
                      }};
    return {"paper-2d", Rate(std::move(rate)),
            sample_speed(uniform_knots(T, n_t), [](double t) { return 1.0 / (50.0 * std::sqrt(t + 1.0)); })};
}

SampledSpeed scenario_fig2_speed(int n_knots) {
    if (n_knots < 2) throw ConfigError("need at least 2 speed knots");
    std::vector<double> t(static_cast<std::size_t>(n_knots));
    for (int i = 0; i < n_knots; ++i) {
        const double s = static_cast<double>(i) / (n_knots - 1);
        t[static_cast<std::size_t>(i)] = s * s;
    }
    return sample_speed(t, [](double tt) { return 1.0 / std::sqrt(tt + 0.01); });
}

double fig2_warp_exact(double t) { return 2.0 * (std::sqrt(t + 0.01) - 0.1); }

Scenario scenario_bump_3d(int n, int n_t) {
    const double T = 0.4;
    const GridSpec g = GridSpec::cube(3, n, 1.0 / n);
    AnalyticRate rate{g, T, "bump-3d", [](const Point& x, double t) {
                          constexpr double two_pi = 2.0 * std::numbers::pi;
                          double s = 0.0;
                          for (double xl : x) s += std::cos(two_pi * (xl - 0.5));
                          return (0.2 + std::exp(2.0 * (s - 3.0))) * (1.0 + t);
                      }};
    return {"bump-3d", Rate(std::move(rate)), sample_speed(uniform_knots(T, n_t), [](double) { return 1.0; })};
}

Scenario make_scenario(const ScenarioSpec& spec) {
    auto pick = [](int v, int fallback) { return v > 0 ? v : fallback; };
    if (spec.name == "const") {
        Scenario s = scenario_constant(spec.alpha0, spec.rho0, spec.dim, pick(spec.n, 16), spec.horizon);
        if (spec.n_t > 1) {
            const double T = s.speed.horizon();
            const double rho0 = spec.rho0;
            s.speed = sample_speed(uniform_knots(T, spec.n_t), [rho0](double) { return rho0; });
        }
        return s;
    }
    if (spec.name == "paper-1d") return scenario_1d(pick(spec.n, 256), pick(spec.n_t, 512));
    if (spec.name == "paper-2d") return scenario_2d(spec.seed, pick(spec.n, 64), pick(spec.n_t, 200));
    if (spec.name == "bump-3d") return scenario_bump_3d(pick(spec.n, 32), pick(spec.n_t, 8));
    if (spec.name == "fig2-speed") {
        const int n = pick(spec.n, 64);
        const GridSpec g = GridSpec::cube(1, n, 1.0 / n);
        const double alpha0 = spec.alpha0;
        AnalyticRate rate{g, 1.0, "fig2-speed", [alpha0](const Point&, double) { return alpha0; }};
        return {"fig2-speed", Rate(std::move(rate)), scenario_fig2_speed(pick(spec.n_t, 511) + 1)};
    }
    throw ConfigError("unknown scenario \"" + spec.name + "\"");
}

}  // namespace tcone
