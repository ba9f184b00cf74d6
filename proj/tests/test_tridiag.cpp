#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tcone/errors.hpp"
#include "tcone/tridiag.hpp"

using namespace tcone;

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix cyclic_matrix(const std::vector<double>& sub, const std::vector<double>& diag,
                     const std::vector<double>& sup, double lo, double hi) {
    const std::size_t n = diag.size();
    Matrix a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = diag[i];
        if (i > 0) a[i][i - 1] = sub[i];
        if (i + 1 < n) a[i][i + 1] = sup[i];
    }
    a[n - 1][0] = lo;
    a[0][n - 1] = hi;
    return a;
}

/// Dense Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(Matrix a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        }
        std::swap(a[c], a[p]);
        std::swap(b[c], b[p]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

std::vector<double> apply(const Matrix& a, const std::vector<double>& x) {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t k = 0; k < x.size(); ++k) y[i] += a[i][k] * x[k];
    }
    return y;
}

}  // namespace

TEST_CASE("identity matrix returns the right-hand side") {
    const std::vector<double> z(5, 0.0), one(5, 1.0), b{1, 2, 3, 4, 5};
    CHECK(cyclic_tridiag_solve(z, one, z, 0.0, 0.0, b) == b);
}

TEST_CASE("general cyclic systems agree with dense elimination") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {3, 4, 7, 16}) {
        std::vector<double> sub(n), diag(n), sup(n), b(n);
        for (int i = 0; i < n; ++i) {
            sub[i] = u(gen);
            sup[i] = u(gen);
            diag[i] = 3.0 + u(gen);
            b[i] = u(gen);
        }
        const double lo = u(gen), hi = u(gen);
        const auto x = cyclic_tridiag_solve(sub, diag, sup, lo, hi, b);
        const auto ref = dense_solve(cyclic_matrix(sub, diag, sup, lo, hi), b);
        for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    }
}

TEST_CASE("singular periodic Laplacian with consistent data") {
    const int n = 12;
    std::vector<double> sub(n, 1.0), diag(n, -2.0), sup(n, 1.0), b(n);
    for (int i = 0; i < n; ++i) b[i] = std::sin(2.0 * std::numbers::pi * i / n);
    const auto x = cyclic_tridiag_solve(sub, diag, sup, 1.0, 1.0, b);
    const auto ax = apply(cyclic_matrix(sub, diag, sup, 1.0, 1.0), x);
    for (int i = 0; i < n; ++i) CHECK(ax[i] == doctest::Approx(b[i]).epsilon(1e-12));
    // Inconsistent data has no solution.
    std::vector<double> c(n, 1.0);
    CHECK_THROWS_AS(cyclic_tridiag_solve(sub, diag, sup, 1.0, 1.0, c), NumericalError);
}

TEST_CASE("argument checks") {
    const std::vector<double> two(2, 1.0), three(3, 1.0), four(4, 1.0);
    CHECK_THROWS_AS(cyclic_tridiag_solve(two, two, two, 0.0, 0.0, two), ArgumentError);
    CHECK_THROWS_AS(cyclic_tridiag_solve(three, four, three, 0.0, 0.0, three), ArgumentError);
    CHECK_THROWS_AS(CirculantSolver(2, 0.5), ArgumentError);
    CHECK_THROWS_AS(CirculantSolver(8, -0.5), ArgumentError);
}

TEST_CASE("circulant kernel solve matches the cyclic solve") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {3, 4, 9, 32, 64}) {
        for (double a : {0.0, 0.0625, 0.5, 4.0, 100.0}) {
            std::vector<double> b(static_cast<std::size_t>(n));
            for (auto& v : b) v = u(gen);
            const std::vector<double> off(static_cast<std::size_t>(n), -a);
            const std::vector<double> diag(static_cast<std::size_t>(n), 1.0 + 2.0 * a);
            const auto ref = cyclic_tridiag_solve(off, diag, off, -a, -a, b);
            const CirculantSolver s(n, a);
            std::vector<double> x = b, scratch;
            s.solve_line(x.data(), 1, scratch);
            for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("circulant solve keeps constants and commutes with shifts exactly") {
    const int n = 24;
    const CirculantSolver s(n, 0.75);
    std::vector<double> scratch;
    std::vector<double> c(n, 0.3);
    s.solve_line(c.data(), 1, scratch);
    for (double v : c) CHECK(v == 0.3);

    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = std::cos(0.7 * i * i);
    std::vector<double> shifted(n);
    for (int i = 0; i < n; ++i) shifted[(i + 5) % n] = b[i];
    s.solve_line(b.data(), 1, scratch);
    s.solve_line(shifted.data(), 1, scratch);
    for (int i = 0; i < n; ++i) CHECK(shifted[(i + 5) % n] == b[i]);

    // Strided lines.
    std::vector<double> wide(2 * n, 0.0);
    for (int i = 0; i < n; ++i) wide[2 * i] = std::cos(0.7 * i * i);
    s.solve_line(wide.data(), 2, scratch);
    for (int i = 0; i < n; ++i) {
        CHECK(wide[2 * i] == b[i]);
        CHECK(wide[2 * i + 1] == 0.0);
    }
}
