#include "tcone/timewarp.hpp"

#include <algorithm>
#include <sstream>

#include "tcone/errors.hpp"

namespace tcone {

double TimeWarp::operator()(double t) const {
    if (!(t >= 0.0 && t <= horizon())) {
        std::ostringstream os;
        os << "time " << t << " outside [0, " << horizon() << "]";
        throw RangeError(os.str());
    }
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    std::size_t seg = (it == breakpoints.begin()) ? 0 : static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    seg = std::min(seg, breakpoints.size() - 2);
    const double w = (t - breakpoints[seg]) / (breakpoints[seg + 1] - breakpoints[seg]);
    return cumulative[seg] + w * (cumulative[seg + 1] - cumulative[seg]);
}

TimeWarp build_warp(const SampledSpeed& speed, int n_tau) {
    if (n_tau < 2) {
        throw ConfigError("n_tau must be at least 2, got " + std::to_string(n_tau));
    }
    const auto& t = speed.knots();
    const auto& rho = speed.values();
    if (t.size() < 2) throw ConfigError("need at least 2 speed knots");

    TimeWarp w;
    w.breakpoints = t;
    w.cumulative.resize(t.size());
    w.cumulative[0] = 0.0;
    for (std::size_t n = 1; n < t.size(); ++n) {
        w.cumulative[n] = w.cumulative[n - 1] + 0.5 * (rho[n - 1] + rho[n]) * (t[n] - t[n - 1]);
    }
    const double total = w.cumulative.back();
    w.dtau = total / n_tau;
    w.tau_knots.resize(static_cast<std::size_t>(n_tau) + 1);
    w.t_hat.resize(w.tau_knots.size());
    for (int n = 0; n <= n_tau; ++n) {
        w.tau_knots[static_cast<std::size_t>(n)] = (n == n_tau) ? total : n * w.dtau;
    }
    w.t_hat.front() = 0.0;
    for (int n = 1; n < n_tau; ++n) {
        w.t_hat[static_cast<std::size_t>(n)] = invert_warp(w, w.tau_knots[static_cast<std::size_t>(n)]);
    }
    w.t_hat.back() = t.back();
    return w;
}

double invert_warp(const TimeWarp& warp, double tau) {
    const auto& c = warp.cumulative;
    if (!(tau >= 0.0 && tau <= c.back())) {
        std::ostringstream os;
        os << "warped time " << tau << " outside [0, " << c.back() << "]";
        throw RangeError(os.str());
    }
    // Left segment on ties: first index with c[idx] >= tau, minus one.
    auto it = std::lower_bound(c.begin(), c.end(), tau);
    std::size_t seg = (it == c.begin()) ? 0 : static_cast<std::size_t>(it - c.begin()) - 1;
    seg = std::min(seg, c.size() - 2);
    const double c0 = c[seg];
    const double c1 = c[seg + 1];
    const double t0 = warp.breakpoints[seg];
    const double t1 = warp.breakpoints[seg + 1];
    if (tau == c1) return t1;
    return t0 + (tau - c0) / (c1 - c0) * (t1 - t0);
}

FieldSeries warped_source(const Rate& rate, const SampledSpeed& speed, const TimeWarp& warp) {
    if (const auto* s = rate.sampled(); s != nullptr && s->knots() != speed.knots()) {
        throw GridMismatchError("rate frames and speed samples use different time knots");
    }
    if (rate.horizon() < warp.horizon()) {
        throw RangeError("rate horizon shorter than the warp horizon");
    }
    const GridSpec& g = rate.grid();
    FieldSeries f(g, Quantity::F, warp.tau_knots.size());
    for (std::size_t n = 0; n < warp.tau_knots.size(); ++n) {
        f.stamps[n] = warp.tau_knots[n];
        const double th = warp.t_hat[n];
        const double inv_rho = 1.0 / speed(th);
        auto lvl = f.level(n);
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            lvl[idx] = rate.value(g.coords(idx), th) * inv_rho;
        }
    }
    return f;
}

}  // namespace tcone
