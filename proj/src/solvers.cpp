#include "tcone/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "tcone/errors.hpp"
#include "tcone/parallel.hpp"
#include "tcone/tridiag.hpp"

namespace tcone {

std::string to_string(StartRule rule) { return rule == StartRule::Taylor ? "taylor" : "paper"; }

StartRule parse_start_rule(const std::string& name) {
    if (name == "taylor") return StartRule::Taylor;
    if (name == "paper") return StartRule::Paper;
    throw ConfigError("start_rule must be \"taylor\" or \"paper\", got \"" + name + "\"");
}

SchemeParams SchemeParams::make(double eta, double dtau, double ds, StartRule start) {
    if (!(ds > 0.0)) throw ConfigError("grid step must be positive");
    const double q = dtau / ds;
    SchemeParams p{eta, dtau, q * q, start};
    p.validate();
    return p;
}

void SchemeParams::validate() const {
    if (!(eta >= 0.0 && eta <= 0.5)) throw ConfigError("eta must lie in [0, 1/2]");
    if (!(dtau > 0.0) || !std::isfinite(dtau)) throw ConfigError("dtau must be positive and finite");
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw ConfigError("ratio r must be positive and finite");
}

CflStatus check_cfl(const SchemeParams& params, int dim) {
    std::ostringstream os;
    if (params.eta >= 0.25) {
        os << "eta = " << params.eta << " >= 1/4: unconditionally stable";
        return {true, os.str()};
    }
    const double lhs = dim * params.ratio;
    if (lhs > 1.0) {
        os << "CFL violated: eta = " << params.eta << " < 1/4 needs sqrt(d) dtau <= ds, but d r = "
           << lhs << " > 1";
        return {false, os.str()};
    }
    os << "eta = " << params.eta << " < 1/4 with sqrt(d) dtau <= ds (d r = " << lhs << ")";
    return {true, os.str()};
}

void require_cfl(const SchemeParams& params, int dim) {
    const CflStatus s = check_cfl(params, dim);
    if (!s.accepted) throw CflError(s.note);
}

FieldSeries scaled_series(const FieldSeries& f, double factor, Quantity label) {
    FieldSeries out = f;
    out.label = label;
    for (auto& lvl : out.levels) {
        for (double& v : lvl) v *= factor;
    }
    return out;
}

namespace {

/// Flat index of the first point of every line along `axis`.
std::vector<std::size_t> line_starts(const GridSpec& g, int axis) {
    std::vector<std::size_t> starts;
    const auto& n = g.counts();
    for (int i = 0; i < (axis == 0 ? 1 : n[0]); ++i) {
        for (int j = 0; j < (axis == 1 ? 1 : n[1]); ++j) {
            for (int k = 0; k < (axis == 2 ? 1 : n[2]); ++k) starts.push_back(g.flat(i, j, k));
        }
    }
    return starts;
}

/// Neighbour offsets of point `idx` along `axis` with periodic wrap.
struct Neighbours {
    std::size_t minus;
    std::size_t plus;
};

Neighbours neighbours(const GridSpec& g, const std::array<int, 3>& ijk, int axis) {
    std::array<int, 3> m = ijk;
    std::array<int, 3> p = ijk;
    const auto ua = static_cast<std::size_t>(axis);
    m[ua] = g.wrap0(axis, ijk[ua] - 1);
    p[ua] = g.wrap0(axis, ijk[ua] + 1);
    return {g.flat(m[0], m[1], m[2]), g.flat(p[0], p[1], p[2])};
}

/// Sum over axes of the undivided second difference at every point.
void second_difference_sum(const GridSpec& g, std::span<const double> u, std::span<double> out,
                           int threads) {
    const int n0 = g.count(0);
    parallel_for(static_cast<std::size_t>(n0), threads, [&](std::size_t i) {
        for (int j = 0; j < g.count(1); ++j) {
            for (int k = 0; k < g.count(2); ++k) {
                const std::array<int, 3> ijk{static_cast<int>(i), j, k};
                const std::size_t c = g.flat(ijk[0], j, k);
                double acc = 0.0;
                for (int a = 0; a < g.dim(); ++a) {
                    const Neighbours nb = neighbours(g, ijk, a);
                    acc += (u[nb.minus] - 2.0 * u[c]) + u[nb.plus];
                }
                out[c] = acc;
            }
        }
    });
}

/// out = v - a d_axis^2 v.
void apply_sweep_operator(const GridSpec& g, std::span<const double> v, double a, int axis,
                          std::span<double> out) {
    for (std::size_t c = 0; c < g.size(); ++c) {
        const Neighbours nb = neighbours(g, g.unflat(c), axis);
        out[c] = v[c] - a * ((v[nb.minus] - 2.0 * v[c]) + v[nb.plus]);
    }
}

void check_source(const FieldSeries& s, const SchemeParams& params) {
    s.validate();
    if (s.n_levels() < 3) throw ConfigError("need at least 3 time levels (N_tau >= 2)");
    if (s.stamps.back() > 0.0) {
        const double spacing = s.stamps[1] - s.stamps[0];
        if (std::abs(spacing - params.dtau) > 1e-9 * params.dtau) {
            throw GridMismatchError("source levels are spaced by " + std::to_string(spacing) +
                                    " but dtau is " + std::to_string(params.dtau));
        }
    }
    const double expected = std::pow(params.dtau / s.grid.step(), 2);
    if (std::abs(params.ratio - expected) > 1e-12 * expected) {
        throw ConfigError("ratio r does not equal (dtau / ds)^2 for this grid");
    }
}

void fill_extrema(SolveReport& report) {
    report.max_value.clear();
    report.min_value.clear();
    for (const auto& lvl : report.u0.levels) {
        const auto [lo, hi] = std::minmax_element(lvl.begin(), lvl.end());
        report.min_value.push_back(*lo);
        report.max_value.push_back(*hi);
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_dim(const FieldSeries& f, int dim) {
    if (f.grid.dim() != dim) {
        throw GridMismatchError("solver for d = " + std::to_string(dim) + " got a " +
                                std::to_string(f.grid.dim()) + "-dimensional series");
    }
}

}  // namespace

FieldSeries wave_solve(const FieldSeries& source, const SchemeParams& params, Quantity label,
                       int threads) {
    params.validate();
    const GridSpec& g = source.grid;
    require_cfl(params, g.dim());
    check_source(source, params);

    const std::size_t n_levels = source.n_levels();
    FieldSeries u(g, label, n_levels);
    u.stamps = source.stamps;
    const double dt2 = params.dtau * params.dtau;
    if (params.start == StartRule::Taylor) {
        for (std::size_t c = 0; c < g.size(); ++c) u.levels[1][c] = 0.5 * dt2 * source.levels[0][c];
    }

    const double a = params.eta * params.ratio;
    std::vector<CirculantSolver> line_solvers;
    std::vector<std::vector<std::size_t>> starts;
    for (int axis = 0; axis < g.dim(); ++axis) {
        line_solvers.emplace_back(g.count(axis), a);
        starts.push_back(line_starts(g, axis));
    }

    std::vector<double> d(g.size());
    for (std::size_t n = 1; n + 1 < n_levels; ++n) {
        const auto& un = u.levels[n];
        const auto& sn = source.levels[n];
        second_difference_sum(g, un, d, threads);
        for (std::size_t c = 0; c < g.size(); ++c) d[c] = params.ratio * d[c] + dt2 * sn[c];

        for (int axis = 0; axis < g.dim(); ++axis) {
            const auto ua = static_cast<std::size_t>(axis);
            const CirculantSolver& solver = line_solvers[ua];
            const std::size_t stride = g.stride(axis);
            const auto& st = starts[ua];
            parallel_for(st.size(), threads, [&](std::size_t l) {
                thread_local std::vector<double> scratch;
                solver.solve_line(d.data() + st[l], stride, scratch);
            });
        }

        auto& next = u.levels[n + 1];
        const auto& prev = u.levels[n - 1];
        for (std::size_t c = 0; c < g.size(); ++c) next[c] = (2.0 * un[c] - prev[c]) + d[c];
    }
    return u;
}

SolveReport solve_1d(const FieldSeries& f, const SchemeParams& params, const SolveOptions& opts) {
    check_dim(f, 1);
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport report;
    report.stability_note = check_cfl(params, 1).note;
    report.u0 = wave_solve(scaled_series(f, 2.0, Quantity::F), params, Quantity::U0, opts.threads);
    report.wall_seconds = seconds_since(t0);
    fill_extrema(report);
    return report;
}

FieldSeries lateral_source_2d(const FieldSeries& f, double dtau, int n_theta, int threads) {
    check_dim(f, 2);
    f.validate();
    if (n_theta < 4) throw ConfigError("n_theta must be at least 4");
    if (!(dtau > 0.0)) throw ConfigError("dtau must be positive");
    const GridSpec& g = f.grid;
    const int n0 = g.count(0);
    const int n1 = g.count(1);
    const std::size_t n_levels = f.n_levels();

    struct Tap {
        int di;
        int dj;
        double w;
    };
    // Bilinear taps of the circle of radius j*dtau, weights already include dtheta.
    std::vector<std::vector<Tap>> stencils(n_levels);
    const double h_theta = 2.0 * std::numbers::pi / n_theta;
    for (std::size_t j = 0; j < n_levels; ++j) {
        const double radius = static_cast<double>(j) * dtau / g.step();
        std::map<std::pair<int, int>, double> taps;
        for (int q = 0; q < n_theta; ++q) {
            const double th = q * h_theta;
            const double px = radius * std::cos(th);
            const double py = radius * std::sin(th);
            const double fx = std::floor(px);
            const double fy = std::floor(py);
            const double wx = px - fx;
            const double wy = py - fy;
            const int ix = g.wrap0(0, static_cast<long>(fx));
            const int iy = g.wrap0(1, static_cast<long>(fy));
            const int ix1 = (ix + 1 == n0) ? 0 : ix + 1;
            const int iy1 = (iy + 1 == n1) ? 0 : iy + 1;
            taps[{ix, iy}] += h_theta * (1.0 - wx) * (1.0 - wy);
            taps[{ix1, iy}] += h_theta * wx * (1.0 - wy);
            taps[{ix, iy1}] += h_theta * (1.0 - wx) * wy;
            taps[{ix1, iy1}] += h_theta * wx * wy;
        }
        for (const auto& [key, w] : taps) {
            if (w != 0.0) stencils[j].push_back(Tap{key.first, key.second, w});
        }
    }

    FieldSeries out(g, Quantity::U1, n_levels);
    out.stamps = f.stamps;
    for (std::size_t n = 1; n < n_levels; ++n) {
        auto& lvl = out.levels[n];
        parallel_for(static_cast<std::size_t>(n0), threads, [&](std::size_t iu) {
            const int i = static_cast<int>(iu);
            for (int jj = 0; jj < n1; ++jj) {
                double acc = 0.0;
                for (std::size_t m = 0; m <= n; ++m) {
                    const double wm = (m == 0 || m == n) ? 0.5 * dtau : dtau;
                    const auto& fm = f.levels[m];
                    double ring = 0.0;
                    for (const Tap& t : stencils[n - m]) {
                        int a = i + t.di;
                        if (a >= n0) a -= n0;
                        int b = jj + t.dj;
                        if (b >= n1) b -= n1;
                        ring += t.w * fm[g.flat(a, b)];
                    }
                    acc += wm * ring;
                }
                lvl[g.flat(i, jj)] = acc;
            }
        });
    }
    return out;
}

SolveReport solve_2d(const FieldSeries& f, const SchemeParams& params, const SolveOptions& opts) {
    check_dim(f, 2);
    params.validate();
    require_cfl(params, 2);
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport report;
    report.stability_note = check_cfl(params, 2).note;
    FieldSeries u1 = lateral_source_2d(f, params.dtau, opts.n_theta, opts.threads);
    report.u0 = wave_solve(u1, params, Quantity::U0, opts.threads);
    report.u1 = std::move(u1);
    report.wall_seconds = seconds_since(t0);
    fill_extrema(report);
    return report;
}

SolveReport solve_3d(const FieldSeries& f, const SchemeParams& params, const SolveOptions& opts) {
    check_dim(f, 3);
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport report;
    report.stability_note = check_cfl(params, 3).note;
    FieldSeries u1 = wave_solve(scaled_series(f, 4.0 * std::numbers::pi, Quantity::F), params,
                                Quantity::U1, opts.threads);
    report.u0 = wave_solve(scaled_series(u1, 2.0, Quantity::U1), params, Quantity::U0, opts.threads);
    report.u1 = std::move(u1);
    report.wall_seconds = seconds_since(t0);
    fill_extrema(report);
    return report;
}

SolveReport solve(const FieldSeries& f, const SchemeParams& params, const SolveOptions& opts) {
    switch (f.grid.dim()) {
        case 1: return solve_1d(f, params, opts);
        case 2: return solve_2d(f, params, opts);
        default: return solve_3d(f, params, opts);
    }
}

FieldSeries unwarp(const SolveReport& report, const TimeWarp& warp) {
    if (report.u0.n_levels() != warp.t_hat.size()) {
        throw GridMismatchError("solution has " + std::to_string(report.u0.n_levels()) +
                                " levels but the warp has " + std::to_string(warp.t_hat.size()));
    }
    FieldSeries u = report.u0;
    u.label = Quantity::u;
    u.stamps = warp.t_hat;
    return u;
}

double scheme_residual(const FieldSeries& u, const FieldSeries& source, const SchemeParams& params) {
    u.validate();
    source.validate();
    if (!(u.grid == source.grid) || u.n_levels() != source.n_levels()) {
        throw GridMismatchError("solution and source differ in shape");
    }
    const GridSpec& g = u.grid;
    const std::size_t sz = g.size();
    const double r = params.ratio;
    const double a = params.eta * r;
    const double dt2 = params.dtau * params.dtau;
    const double op_norm = 1.0 + 4.0 * g.dim() * r;

    std::vector<double> dd(sz), lhs(sz), tmp(sz), rhs(sz), mix(sz);
    double worst = 0.0;
    double scale = 0.0;
    auto maxabs = [](std::span<const double> v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };
    for (std::size_t n = 1; n + 1 < u.n_levels(); ++n) {
        const auto& up = u.levels[n + 1];
        const auto& uc = u.levels[n];
        const auto& um = u.levels[n - 1];
        const auto& sn = source.levels[n];
        for (std::size_t c = 0; c < sz; ++c) dd[c] = (up[c] - 2.0 * uc[c]) + um[c];
        if (g.dim() == 1) {
            for (std::size_t c = 0; c < sz; ++c) {
                mix[c] = params.eta * up[c] + (1.0 - 2.0 * params.eta) * uc[c] + params.eta * um[c];
            }
            second_difference_sum(g, mix, rhs, 1);
            lhs = dd;
        } else {
            lhs = dd;
            for (int axis = 0; axis < g.dim(); ++axis) {
                apply_sweep_operator(g, lhs, a, axis, tmp);
                std::swap(lhs, tmp);
            }
            second_difference_sum(g, uc, rhs, 1);
        }
        for (std::size_t c = 0; c < sz; ++c) rhs[c] = r * rhs[c] + dt2 * sn[c];
        for (std::size_t c = 0; c < sz; ++c) worst = std::max(worst, std::abs(lhs[c] - rhs[c]));
        const double level_scale = op_norm * (maxabs(up) + 2.0 * maxabs(uc) + maxabs(um)) + dt2 * maxabs(sn);
        scale = std::max(scale, level_scale);
    }
    return scale > 0.0 ? worst / scale : worst;
}

}  // namespace tcone
