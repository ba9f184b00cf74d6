#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcone/field_core.hpp"
#include "tcone/timewarp.hpp"

namespace tcone {

/// How the second time level U_1 is initialised (level 0 is always zero).
enum class StartRule {
    /// U_1 = dtau^2 S_0 / 2 from the Taylor expansion with zero data.
    Taylor,
    /// U_1 = 0, the literal two-zero-level start.
    Paper,
};

std::string to_string(StartRule rule);
/// Accepts "taylor" / "paper"; throws ConfigError otherwise.
StartRule parse_start_rule(const std::string& name);

/// Three-level weighted scheme parameters. `ratio` is r = (dtau / ds)^2.
struct SchemeParams {
    double eta = 0.25;
    double dtau = 0.0;
    double ratio = 0.0;
    StartRule start = StartRule::Taylor;

    static SchemeParams make(double eta, double dtau, double ds, StartRule start = StartRule::Taylor);

    /// Throws ConfigError unless 0 <= eta <= 1/2 and dtau, ratio are positive and finite.
    void validate() const;
};

struct CflStatus {
    bool accepted = true;
    std::string note;
};

/// eta >= 1/4 is unconditionally stable; below that sqrt(dim) dtau <= ds
/// (equivalently dim * r <= 1) is required.
CflStatus check_cfl(const SchemeParams& params, int dim);

/// check_cfl, throwing CflError with the violated inequality on rejection.
void require_cfl(const SchemeParams& params, int dim);

struct SolveOptions {
    /// Worker threads for line sweeps and the lateral source; never changes results.
    int threads = 1;
    /// Angular panels of the 2D lateral-cone source.
    int n_theta = 64;
};

struct SolveReport {
    /// The U_0 series; level n sits at tau_n.
    FieldSeries u0;
    /// U_1: the lateral integral in 2D, the stage-one unknown in 3D.
    std::optional<FieldSeries> u1;
    double wall_seconds = 0.0;
    std::string stability_note;
    std::vector<double> max_value;
    std::vector<double> min_value;
};

/// Multiplies every level of `f` by `factor`; the label becomes `label`.
FieldSeries scaled_series(const FieldSeries& f, double factor, Quantity label);

/// Advances U_tt - Laplacian U = S on the periodic lattice of `source`:
///   (I - eta r d_1^2) ... (I - eta r d_dim^2) D = r sum_l d_l^2 U_n + dtau^2 S_n,
///   U_{n+1} = 2 U_n - U_{n-1} + D,
/// one implicit sweep per axis (a single sweep in 1D, the Lees pair in 2D,
/// the three-sweep cascade in 3D). Each sweep is a set of independent
/// periodic line solves.
FieldSeries wave_solve(const FieldSeries& source, const SchemeParams& params, Quantity label,
                       int threads = 1);

/// U_0 with source 2 F.
SolveReport solve_1d(const FieldSeries& f, const SchemeParams& params, const SolveOptions& opts = {});

/// Trapezoid in zeta over the tau-levels and periodic trapezoid in theta of
///   U_1(x, tau_n) = int_0^tau_n int_0^2pi F(x + (tau_n - zeta)(cos, sin), zeta) dtheta dzeta,
/// with F bilinearly interpolated off the lattice. Level 0 is zero.
/// Throws ConfigError for n_theta < 4.
FieldSeries lateral_source_2d(const FieldSeries& f, double dtau, int n_theta, int threads = 1);

/// U_0 with source U_1 = lateral_source_2d(F).
SolveReport solve_2d(const FieldSeries& f, const SchemeParams& params, const SolveOptions& opts = {});

/// Stage one: U_1 with source 4 pi F. Stage two: U_0 with source 2 U_1.
SolveReport solve_3d(const FieldSeries& f, const SchemeParams& params, const SolveOptions& opts = {});

/// Dispatches on the grid dimension of `f`.
SolveReport solve(const FieldSeries& f, const SchemeParams& params, const SolveOptions& opts = {});

/// Relabels U_0 level n as u(., t_hat_n); values are unchanged.
/// Throws GridMismatchError if the level count differs from the warp.
FieldSeries unwarp(const SolveReport& report, const TimeWarp& warp);

/// Largest residual of the difference equations over all points and levels
/// 1..N-1, as a normwise backward error: divided by the largest
/// ||A|| (|U_{n+1}| + 2|U_n| + |U_{n-1}|) + dtau^2 |S_n| with ||A|| = 1 + 4 d r.
/// In 1D the single-sweep
/// equation is checked in its three-level form
///   U_{n+1} - 2U_n + U_{n-1} = r d^2 (eta U_{n+1} + (1-2 eta) U_n + eta U_{n-1}) + dtau^2 S_n;
/// in 2D and 3D the product of the sweep operators applied to D is checked.
double scheme_residual(const FieldSeries& u, const FieldSeries& source, const SchemeParams& params);

}  // namespace tcone
