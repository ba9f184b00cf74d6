#include "tcone/field_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>
#include <utility>

#include "tcone/errors.hpp"

namespace tcone {

GridSpec::GridSpec(int dim, std::array<int, 3> counts, double step)
    : dim_(dim), counts_(counts), step_(step) {
    if (dim < 1 || dim > 3) {
        throw ConfigError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ConfigError("grid step must be positive and finite");
    }
    for (int a = 0; a < 3; ++a) {
        auto& n = counts_[static_cast<std::size_t>(a)];
        if (a >= dim) {
            n = 1;
        } else if (n < 3) {
            throw ConfigError("grid axis " + std::to_string(a) + " needs at least 3 points, got " +
                              std::to_string(n));
        }
    }
}

GridSpec GridSpec::cube(int dim, int n, double step) { return GridSpec(dim, {n, n, n}, step); }

std::size_t GridSpec::size() const {
    return static_cast<std::size_t>(counts_[0]) * static_cast<std::size_t>(counts_[1]) *
           static_cast<std::size_t>(counts_[2]);
}

std::size_t GridSpec::stride(int axis) const {
    switch (axis) {
        case 0: return static_cast<std::size_t>(counts_[1]) * static_cast<std::size_t>(counts_[2]);
        case 1: return static_cast<std::size_t>(counts_[2]);
        default: return 1;
    }
}

std::array<int, 3> GridSpec::unflat(std::size_t idx) const {
    const auto n2 = static_cast<std::size_t>(counts_[2]);
    const auto n1 = static_cast<std::size_t>(counts_[1]);
    const int k = static_cast<int>(idx % n2);
    idx /= n2;
    const int j = static_cast<int>(idx % n1);
    const int i = static_cast<int>(idx / n1);
    return {i, j, k};
}

Point GridSpec::coords(std::size_t idx) const {
    const auto ijk = unflat(idx);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) {
        p[static_cast<std::size_t>(a)] = ijk[static_cast<std::size_t>(a)] * step_;
    }
    return p;
}

int GridSpec::wrap0(int axis, long i) const {
    const long n = count(axis);
    long r = i % n;
    if (r < 0) r += n;
    return static_cast<int>(r);
}

int wrap_index(const GridSpec& grid, int axis, long i) {
    if (axis < 0 || axis >= grid.dim()) {
        throw ArgumentError("axis out of range for grid dimension");
    }
    return grid.wrap0(axis, i - 1) + 1;
}

namespace {

void check_knots(const std::vector<double>& knots) {
    if (knots.size() < 2) {
        throw ConfigError("need at least 2 time knots");
    }
    if (knots.front() != 0.0) {
        throw ConfigError("time knots must start at 0");
    }
    for (std::size_t n = 1; n < knots.size(); ++n) {
        if (!(knots[n] > knots[n - 1])) {
            std::ostringstream os;
            os << "time knots must be strictly increasing (knot " << n << ")";
            throw ConfigError(os.str());
        }
    }
}

void check_time(double t, double horizon) {
    if (!(t >= 0.0 && t <= horizon)) {
        std::ostringstream os;
        os << "time " << t << " outside [0, " << horizon << "]";
        throw RangeError(os.str());
    }
}

/// Segment index and weight of t in the knot sequence (t already in range).
std::pair<std::size_t, double> locate(const std::vector<double>& knots, double t) {
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t seg = (it == knots.begin()) ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
    seg = std::min(seg, knots.size() - 2);
    const double w = (t - knots[seg]) / (knots[seg + 1] - knots[seg]);
    return {seg, w};
}

}  // namespace

double interp_lattice(const GridSpec& g, std::span<const double> frame, const Point& x) {
    std::array<int, 3> i0{0, 0, 0};
    std::array<int, 3> i1{0, 0, 0};
    std::array<double, 3> w{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim(); ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const double pos = x[ua] / g.step();
        const double fl = std::floor(pos);
        w[ua] = pos - fl;
        const long base = static_cast<long>(fl);
        i0[ua] = g.wrap0(a, base);
        i1[ua] = g.wrap0(a, base + 1);
    }
    switch (g.dim()) {
        case 1:
            return (1.0 - w[0]) * frame[g.flat(i0[0])] + w[0] * frame[g.flat(i1[0])];
        case 2: {
            const double a0 = (1.0 - w[1]) * frame[g.flat(i0[0], i0[1])] + w[1] * frame[g.flat(i0[0], i1[1])];
            const double a1 = (1.0 - w[1]) * frame[g.flat(i1[0], i0[1])] + w[1] * frame[g.flat(i1[0], i1[1])];
            return (1.0 - w[0]) * a0 + w[0] * a1;
        }
        default: {
            auto line = [&](int i, int j) {
                return (1.0 - w[2]) * frame[g.flat(i, j, i0[2])] + w[2] * frame[g.flat(i, j, i1[2])];
            };
            const double a0 = (1.0 - w[1]) * line(i0[0], i0[1]) + w[1] * line(i0[0], i1[1]);
            const double a1 = (1.0 - w[1]) * line(i1[0], i0[1]) + w[1] * line(i1[0], i1[1]);
            return (1.0 - w[0]) * a0 + w[0] * a1;
        }
    }
}

SampledSpeed::SampledSpeed(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    check_knots(knots_);
    if (values_.size() != knots_.size()) {
        throw ConfigError("speed values and knots differ in length");
    }
    for (double v : values_) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError("growth speed samples must be strictly positive");
        }
    }
}

double SampledSpeed::operator()(double t) const {
    check_time(t, horizon());
    const auto [seg, w] = locate(knots_, t);
    return (1.0 - w) * values_[seg] + w * values_[seg + 1];
}

SampledRate::SampledRate(GridSpec grid, std::vector<double> knots,
                         std::vector<std::vector<double>> frames)
    : grid_(grid), knots_(std::move(knots)), frames_(std::move(frames)) {
    check_knots(knots_);
    if (frames_.size() != knots_.size()) {
        throw ConfigError("rate needs one frame per time knot");
    }
    for (std::size_t n = 0; n < frames_.size(); ++n) {
        if (frames_[n].size() != grid_.size()) {
            throw GridMismatchError("rate frame " + std::to_string(n) + " does not match the grid");
        }
        for (double v : frames_[n]) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw ConfigError("nucleation rate samples must be nonnegative (frame " +
                                  std::to_string(n) + ")");
            }
        }
    }
}

double SampledRate::operator()(const Point& x, double t) const {
    const auto [seg, w] = locate(knots_, t);
    const double a = interp_lattice(grid_, frames_[seg], x);
    if (w == 0.0) return a;
    const double b = interp_lattice(grid_, frames_[seg + 1], x);
    return (1.0 - w) * a + w * b;
}

Rate::Rate(SampledRate sampled) : impl_(std::move(sampled)) {}

Rate::Rate(AnalyticRate analytic) : impl_(std::move(analytic)) {
    const auto& a = std::get<AnalyticRate>(impl_);
    if (!a.fn) throw ConfigError("analytic rate without an expression");
    if (!(a.horizon > 0.0)) throw ConfigError("analytic rate needs a positive horizon");
}

const GridSpec& Rate::grid() const {
    return std::visit([](const auto& r) -> const GridSpec& {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, SampledRate>) {
            return r.grid();
        } else {
            return r.grid;
        }
    }, impl_);
}

double Rate::horizon() const {
    if (const auto* s = std::get_if<SampledRate>(&impl_)) return s->horizon();
    return std::get<AnalyticRate>(impl_).horizon;
}

double Rate::value(const Point& x, double t) const {
    if (const auto* s = std::get_if<SampledRate>(&impl_)) return (*s)(x, t);
    const auto& a = std::get<AnalyticRate>(impl_);
    Point y = x;
    for (int ax = 0; ax < a.grid.dim(); ++ax) {
        const auto ua = static_cast<std::size_t>(ax);
        const double L = a.grid.period(ax);
        if (y[ua] < 0.0 || y[ua] >= L) y[ua] -= L * std::floor(y[ua] / L);
    }
    return a.fn(y, t);
}

double eval_rate(const Rate& rate, const Point& x, double t) {
    check_time(t, rate.horizon());
    return rate.value(x, t);
}

double eval_speed(const SampledSpeed& speed, double t) { return speed(t); }

SampledRate sample_rate(const Rate& rate, const std::vector<double>& knots) {
    const GridSpec& g = rate.grid();
    std::vector<std::vector<double>> frames(knots.size(), std::vector<double>(g.size()));
    for (std::size_t n = 0; n < knots.size(); ++n) {
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            frames[n][idx] = eval_rate(rate, g.coords(idx), knots[n]);
        }
    }
    return SampledRate(g, knots, std::move(frames));
}

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::U0: return "U0";
        case Quantity::U1: return "U1";
        case Quantity::u: return "u";
        case Quantity::F: return "F";
    }
    return "?";
}

FieldSeries::FieldSeries(GridSpec g, Quantity q, std::size_t n_levels)
    : grid(g), label(q), levels(n_levels, std::vector<double>(g.size(), 0.0)), stamps(n_levels, 0.0) {}

void FieldSeries::validate() const {
    for (std::size_t n = 0; n < levels.size(); ++n) {
        if (levels[n].size() != grid.size()) {
            throw GridMismatchError("level " + std::to_string(n) + " does not match the grid shape");
        }
    }
    if (stamps.size() != levels.size()) {
        throw GridMismatchError("series has " + std::to_string(stamps.size()) + " stamps for " +
                                std::to_string(levels.size()) + " levels");
    }
}

}  // namespace tcone
