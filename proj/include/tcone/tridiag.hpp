#pragma once

#include <span>
#include <vector>

namespace tcone {

/// Solves the periodic tridiagonal system
///   sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]   (indices mod N)
/// where the wrap entries are carried separately: corner_low = A[N-1][0] and
/// corner_high = A[0][N-1] (sub[0] and sup[N-1] are ignored).
///
/// Thomas elimination on a modified tridiagonal matrix plus a Sherman-Morrison
/// rank-one correction. A singular system is accepted only when the right-hand
/// side is consistent, in which case one particular solution is returned.
/// Throws ArgumentError for N < 3 or length mismatch and NumericalError for a
/// zero pivot or an inconsistent singular system.
std::vector<double> cyclic_tridiag_solve(std::span<const double> sub, std::span<const double> diag,
                                         std::span<const double> sup, double corner_low,
                                         double corner_high, std::span<const double> rhs);

/// Inverse of the symmetric circulant tridiag(-a, 1 + 2a, -a) of size N.
///
/// The first column g of the inverse is computed once by a cyclic solve.
/// Because the rows of the matrix sum to 1, so do those of the inverse, and
/// the line solve is applied as
///   x_i = b_i + sum_k g_k ((b_{i-k} - b_i) + (b_{i+k} - b_i)),
/// which maps constant lines to themselves bit-exactly and commutes with
/// cyclic shifts. Kernel entries below 1e-17 |g_0| are dropped.
class CirculantSolver {
public:
    CirculantSolver() = default;
    /// Throws ArgumentError for n < 3 or a < 0.
    CirculantSolver(int n, double a);

    int size() const { return n_; }
    double coupling() const { return a_; }
    /// Number of off-diagonal kernel entries kept on each side.
    int width() const { return static_cast<int>(g_.size()) - 1; }
    const std::vector<double>& kernel() const { return g_; }

    /// Solves in place on the strided line base[0], base[stride], ...
    /// `scratch` is resized as needed and keeps a copy of the rhs.
    void solve_line(double* base, std::size_t stride, std::vector<double>& scratch) const;

private:
    int n_ = 0;
    double a_ = 0.0;
    std::vector<double> g_;
    double g_mid_ = 0.0;
    bool has_mid_ = false;
};

}  // namespace tcone
