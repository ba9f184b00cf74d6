#pragma once

#include <vector>

#include "tcone/field_core.hpp"
#include "tcone/timewarp.hpp"

namespace tcone {

/// Panel counts for the direct space-time quadrature of the cone integral.
///
/// n_s panels in time, n_r in the radius (or across the interval for d = 1),
/// n_ang per angle (angle for d = 2; cos(polar) and azimuth for d = 3).
struct ConeQuadSpec {
    int n_s = 64;
    int n_r = 64;
    int n_ang = 64;

    /// Throws ConfigError unless all counts are >= 2.
    void validate() const;
};

/// r(t,s) = R(t) - R(s). Throws ArgumentError when s > t.
double cone_radius(const TimeWarp& warp, double t, double s);

struct OracleResult {
    double value = 0.0;
    /// The cone at t reaches past half a period on some axis, so it overlaps
    /// its own periodic image.
    bool wraps = false;
};

/// Composite-trapezoid approximation of the time-cone integral
/// int_0^t int_{B(x, r(t,s))} alpha(y, s) dy ds.
OracleResult direct_u_report(const Rate& rate, const TimeWarp& warp, const Point& x, double t,
                             const ConeQuadSpec& quad);

double direct_u(const Rate& rate, const TimeWarp& warp, const Point& x, double t,
                const ConeQuadSpec& quad);

struct SamplePoint {
    Point x;
    double t = 0.0;
};

/// direct_u at many points; each point is independent, so results do not
/// depend on `threads`.
std::vector<OracleResult> direct_u_batch(const Rate& rate, const TimeWarp& warp,
                                         const std::vector<SamplePoint>& points,
                                         const ConeQuadSpec& quad, int threads = 1);

/// Closed-form cone measure for constant alpha0, rho0: alpha0 rho0 t^2 (d=1),
/// pi alpha0 rho0^2 t^3 / 3 (d=2), pi alpha0 rho0^3 t^4 / 3 (d=3).
double jmak_u(double alpha0, double rho0, double t, int dim);

/// 1 - exp(-u); throws ArgumentError for u < 0.
double phase_fraction(double u);

/// Volume of the unit ball in d dimensions (d = 1..3).
double unit_ball_volume(int dim);

}  // namespace tcone
