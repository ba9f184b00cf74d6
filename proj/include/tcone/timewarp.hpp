#pragma once

#include <vector>

#include "tcone/field_core.hpp"

namespace tcone {

/// Piecewise-linear change of variable tau = R(t) built from sampled rho.
///
/// `cumulative[n]` holds the composite-trapezoid partial sum R(t_n); the
/// uniform warped knots tau_n = n*dtau cover [0, R(T)] and `t_hat[n]` is the
/// exact preimage of tau_n under the piecewise-linear R.
struct TimeWarp {
    std::vector<double> breakpoints;
    std::vector<double> cumulative;
    double dtau = 0.0;
    std::vector<double> tau_knots;
    std::vector<double> t_hat;

    double horizon() const { return breakpoints.back(); }
    double total() const { return cumulative.back(); }
    int n_tau() const { return static_cast<int>(tau_knots.size()) - 1; }

    /// R(t) for t in [0, T]; throws RangeError otherwise.
    double operator()(double t) const;
};

/// Throws ConfigError if n_tau < 2.
TimeWarp build_warp(const SampledSpeed& speed, int n_tau);

/// Unique t with R(t) = tau; throws RangeError for tau outside [0, R(T)].
double invert_warp(const TimeWarp& warp, double tau);

/// Level n holds alpha(x, t_hat_n) / rho(t_hat_n) on every lattice point.
/// Throws GridMismatchError if a sampled rate uses other knots than the speed.
FieldSeries warped_source(const Rate& rate, const SampledSpeed& speed, const TimeWarp& warp);

}  // namespace tcone
