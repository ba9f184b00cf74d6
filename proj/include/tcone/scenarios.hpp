#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcone/field_core.hpp"

namespace tcone {

/// A nucleation rate together with its growth speed.
struct Scenario {
    std::string name;
    Rate rate;
    SampledSpeed speed;
};

/// Preset selection. Zero-valued sizes fall back to the preset defaults.
struct ScenarioSpec {
    /// const | paper-1d | paper-2d | fig2-speed | bump-3d
    std::string name = "const";
    /// Lattice points per axis.
    int n = 0;
    /// Speed-knot panels over [0, T].
    int n_t = 0;
    std::uint64_t seed = 0;
    /// const only.
    double alpha0 = 1.0;
    double rho0 = 1.0;
    int dim = 3;
    /// const only; 0 picks T = 1 / rho0 so that R(T) = 1.
    double horizon = 0.0;
};

/// Names accepted by make_scenario.
const std::vector<std::string>& scenario_names();

/// Constant alpha0 and rho0 on a unit-period lattice of n points per axis.
/// Throws ConfigError for alpha0 < 0 or rho0 <= 0.
Scenario scenario_constant(double alpha0, double rho0, int dim, int n = 16, double horizon = 0.0);

/// rho = 1 / (2 sqrt(t+1)), alpha = exp(-(x - pi/2)^2 / 2) (1 - cos 10x) exp(1 - t/10),
/// T = 1, period pi.
Scenario scenario_1d(int n = 256, int n_t = 512);

/// Hexagonal pattern f times (1 - exp(-t/10)) on the unit torus, with
/// rho = 1 / (50 sqrt(t+1)), T = 50.
Scenario scenario_2d(std::uint64_t seed, int n = 64, int n_t = 200);

/// The time-independent factor f of scenario_2d on its lattice: a honeycomb
/// motif from three plane waves on a low background, plus Cauchy noise
/// (scale 0.01, truncated at +-100 before scaling), clipped below at 0.
std::vector<double> hexagon_field(const GridSpec& grid, std::uint64_t seed);

/// rho = (t + 0.01)^(-1/2) on [0, 1] at `n_knots` knots graded as t = (i/(n_knots-1))^2.
SampledSpeed scenario_fig2_speed(int n_knots = 512);

/// Closed-form warp of scenario_fig2_speed: 2 (sqrt(t + 0.01) - 0.1).
double fig2_warp_exact(double t);

/// Periodic bump (0.2 + exp(2 (sum_l cos 2pi(x_l - 1/2) - 3))) (1 + t) on the
/// unit torus, rho = 1, T = 0.4.
Scenario scenario_bump_3d(int n = 32, int n_t = 8);

/// Throws ConfigError for an unknown name.
Scenario make_scenario(const ScenarioSpec& spec);

}  // namespace tcone
