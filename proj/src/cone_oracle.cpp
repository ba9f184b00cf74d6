#include "tcone/cone_oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tcone/detail/quadrature.hpp"
#include "tcone/errors.hpp"
#include "tcone/parallel.hpp"

namespace tcone {

void ConeQuadSpec::validate() const {
    if (n_s < 2 || n_r < 2 || n_ang < 2) {
        std::ostringstream os;
        os << "cone quadrature panel counts must be >= 2 (n_s=" << n_s << ", n_r=" << n_r
           << ", n_ang=" << n_ang << ")";
        throw ConfigError(os.str());
    }
}

double cone_radius(const TimeWarp& warp, double t, double s) {
    if (s > t) {
        std::ostringstream os;
        os << "cone radius needs s <= t (s=" << s << ", t=" << t << ")";
        throw ArgumentError(os.str());
    }
    if (s == t) return 0.0;
    return warp(t) - warp(s);
}

namespace {

/// Ball integral of alpha(., s) around x with radius r.
double ball_integral(const Rate& rate, int dim, const Point& x, double s, double r,
                     const detail::UnitTrapezoid& radial, const detail::SphereRule& sphere) {
    if (r == 0.0) return 0.0;
    double acc = 0.0;
    if (dim == 1) {
        for (std::size_t b = 0; b < radial.nodes.size(); ++b) {
            const Point y{x[0] - r + 2.0 * r * radial.nodes[b], 0.0, 0.0};
            acc += radial.weights[b] * rate.value(y, s);
        }
        return 2.0 * r * acc;
    }
    for (std::size_t b = 1; b < radial.nodes.size(); ++b) {
        const double ell = r * radial.nodes[b];
        double shell = 0.0;
        for (std::size_t a = 0; a < sphere.dirs.size(); ++a) {
            const Point& p = sphere.dirs[a];
            const Point y{x[0] + ell * p[0], x[1] + ell * p[1], x[2] + ell * p[2]};
            shell += sphere.weights[a] * rate.value(y, s);
        }
        acc += radial.weights[b] * detail::ipow(radial.nodes[b], dim - 1) * shell;
    }
    return detail::ipow(r, dim) * acc;
}

}  // namespace

OracleResult direct_u_report(const Rate& rate, const TimeWarp& warp, const Point& x, double t,
                             const ConeQuadSpec& quad) {
    quad.validate();
    const double horizon = std::min(rate.horizon(), warp.horizon());
    if (!(t >= 0.0 && t <= horizon)) {
        std::ostringstream os;
        os << "oracle time " << t << " outside [0, " << horizon << "]";
        throw RangeError(os.str());
    }
    const GridSpec& g = rate.grid();
    const int dim = g.dim();
    OracleResult out;
    const double r_max = warp(t);
    for (int a = 0; a < dim; ++a) {
        if (r_max > 0.5 * g.period(a)) out.wraps = true;
    }
    if (t == 0.0) return out;

    const detail::UnitTrapezoid time_rule(quad.n_s);
    const detail::UnitTrapezoid radial(quad.n_r);
    const detail::SphereRule sphere(dim, quad.n_ang);
    const double rt = warp(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < time_rule.nodes.size(); ++i) {
        const double s = (i + 1 == time_rule.nodes.size()) ? t : t * time_rule.nodes[i];
        const double r = (s == t) ? 0.0 : rt - warp(s);
        acc += time_rule.weights[i] * ball_integral(rate, dim, x, s, r, radial, sphere);
    }
    out.value = t * acc;
    return out;
}

double direct_u(const Rate& rate, const TimeWarp& warp, const Point& x, double t,
                const ConeQuadSpec& quad) {
    return direct_u_report(rate, warp, x, t, quad).value;
}

std::vector<OracleResult> direct_u_batch(const Rate& rate, const TimeWarp& warp,
                                         const std::vector<SamplePoint>& points,
                                         const ConeQuadSpec& quad, int threads) {
    quad.validate();
    std::vector<OracleResult> out(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) {
        out[i] = direct_u_report(rate, warp, points[i].x, points[i].t, quad);
    });
    return out;
}

double unit_ball_volume(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi / 3.0;
        default: throw ArgumentError("unsupported dimension " + std::to_string(dim));
    }
}

double jmak_u(double alpha0, double rho0, double t, int dim) {
    switch (dim) {
        case 1: return alpha0 * rho0 * t * t;
        case 2: return std::numbers::pi * alpha0 * rho0 * rho0 * t * t * t / 3.0;
        case 3: return std::numbers::pi * alpha0 * rho0 * rho0 * rho0 * t * t * t * t / 3.0;
        default: throw ArgumentError("unsupported dimension " + std::to_string(dim));
    }
}

double phase_fraction(double u) {
    if (!(u >= 0.0)) {
        throw ArgumentError("phase fraction needs a nonnegative expectation");
    }
    return -std::expm1(-u);
}

}  // namespace tcone
