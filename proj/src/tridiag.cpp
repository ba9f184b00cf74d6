#include "tcone/tridiag.hpp"

#include <cmath>
#include <limits>

#include "tcone/errors.hpp"

namespace tcone {

namespace {

/// Thomas elimination for a non-periodic tridiagonal system; `c` and `d`
/// are working copies.
void thomas(std::span<const double> sub, std::vector<double>& b, std::span<const double> sup,
            std::vector<double>& d, double scale) {
    const std::size_t n = b.size();
    std::vector<double> c(n, 0.0);
    const double tiny = std::numeric_limits<double>::epsilon() * 1e-3 * scale;
    for (std::size_t i = 0; i < n; ++i) {
        double pivot = b[i];
        if (i > 0) {
            pivot -= sub[i] * c[i - 1];
            d[i] -= sub[i] * d[i - 1];
        }
        if (!(std::abs(pivot) > tiny)) {
            throw NumericalError("zero pivot in tridiagonal elimination at row " + std::to_string(i));
        }
        c[i] = (i + 1 < n) ? sup[i] / pivot : 0.0;
        d[i] /= pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
}

}  // namespace

std::vector<double> cyclic_tridiag_solve(std::span<const double> sub, std::span<const double> diag,
                                         std::span<const double> sup, double corner_low,
                                         double corner_high, std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n < 3) throw ArgumentError("cyclic tridiagonal system needs at least 3 unknowns");
    if (sub.size() != n || sup.size() != n || rhs.size() != n) {
        throw ArgumentError("cyclic tridiagonal coefficient lengths differ");
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        scale = std::max({scale, std::abs(sub[i]), std::abs(diag[i]), std::abs(sup[i])});
    }
    scale = std::max({scale, std::abs(corner_low), std::abs(corner_high)});
    if (scale == 0.0) throw NumericalError("cyclic tridiagonal matrix is zero");

    const double gamma = (diag[0] != 0.0) ? -diag[0] : -scale;
    std::vector<double> b(diag.begin(), diag.end());
    b[0] -= gamma;
    b[n - 1] -= corner_low * corner_high / gamma;

    std::vector<double> y(rhs.begin(), rhs.end());
    std::vector<double> bb = b;
    thomas(sub, bb, sup, y, scale);

    std::vector<double> z(n, 0.0);
    z[0] = gamma;
    z[n - 1] = corner_low;
    bb = b;
    thomas(sub, bb, sup, z, scale);

    const double v_last = corner_high / gamma;
    const double vy = y[0] + v_last * y[n - 1];
    const double denom = 1.0 + z[0] + v_last * z[n - 1];
    const double eps = 64.0 * std::numeric_limits<double>::epsilon();
    if (std::abs(denom) <= eps) {
        double ymax = 0.0;
        for (double v : y) ymax = std::max(ymax, std::abs(v));
        if (std::abs(vy) <= eps * std::max(1.0, ymax)) return y;
        throw NumericalError("singular cyclic tridiagonal system with inconsistent right-hand side");
    }
    const double t = vy / denom;
    for (std::size_t i = 0; i < n; ++i) y[i] -= t * z[i];
    return y;
}

CirculantSolver::CirculantSolver(int n, double a) : n_(n), a_(a) {
    if (n < 3) throw ArgumentError("line solver needs at least 3 points");
    if (!(a >= 0.0) || !std::isfinite(a)) throw ArgumentError("line coupling must be nonnegative");
    const auto un = static_cast<std::size_t>(n);
    std::vector<double> off(un, -a);
    std::vector<double> diag(un, 1.0 + 2.0 * a);
    std::vector<double> e0(un, 0.0);
    e0[0] = 1.0;
    const std::vector<double> col = cyclic_tridiag_solve(off, diag, off, -a, -a, e0);

    const int half = (n - 1) / 2;
    std::vector<double> g(static_cast<std::size_t>(half) + 1);
    g[0] = col[0];
    for (int k = 1; k <= half; ++k) {
        g[static_cast<std::size_t>(k)] = 0.5 * (col[static_cast<std::size_t>(k)] + col[un - static_cast<std::size_t>(k)]);
    }
    const double cut = 1e-17 * std::abs(g[0]);
    int width = 0;
    for (int k = 1; k <= half; ++k) {
        if (std::abs(g[static_cast<std::size_t>(k)]) > cut) width = k;
    }
    g.resize(static_cast<std::size_t>(width) + 1);
    g_ = std::move(g);
    if (n % 2 == 0) {
        g_mid_ = col[un / 2];
        has_mid_ = std::abs(g_mid_) > cut;
    }
}

void CirculantSolver::solve_line(double* base, std::size_t stride, std::vector<double>& scratch) const {
    const auto un = static_cast<std::size_t>(n_);
    scratch.resize(un);
    for (std::size_t i = 0; i < un; ++i) scratch[i] = base[i * stride];
    const std::size_t w = g_.size() - 1;
    const std::size_t mid = un / 2;
    for (std::size_t i = 0; i < un; ++i) {
        const double bi = scratch[i];
        double acc = 0.0;
        for (std::size_t k = 1; k <= w; ++k) {
            const std::size_t lo = (i >= k) ? i - k : i + un - k;
            const std::size_t hi = (i + k < un) ? i + k : i + k - un;
            acc += g_[k] * ((scratch[lo] - bi) + (scratch[hi] - bi));
        }
        if (has_mid_) {
            const std::size_t j = (i + mid < un) ? i + mid : i + mid - un;
            acc += g_mid_ * (scratch[j] - bi);
        }
        base[i * stride] = bi + acc;
    }
}

}  // namespace tcone
