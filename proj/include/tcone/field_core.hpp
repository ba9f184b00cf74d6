#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tcone {

/// Spatial point; components beyond the grid dimension are ignored.
using Point = std::array<double, 3>;

/// Periodic equidistant lattice in 1, 2 or 3 dimensions.
///
/// Axis l holds N_l distinct points x = i*step (0-based i), and the period
/// is N_l*step: the point after the last one is the first one again.
/// Storage is row-major with axis 0 slowest.
class GridSpec {
public:
    GridSpec() = default;

    /// Throws ConfigError unless 1 <= dim <= 3, every used count >= 3 and step > 0.
    GridSpec(int dim, std::array<int, 3> counts, double step);

    static GridSpec cube(int dim, int n, double step);

    int dim() const { return dim_; }
    int count(int axis) const { return counts_[static_cast<std::size_t>(axis)]; }
    const std::array<int, 3>& counts() const { return counts_; }
    double step() const { return step_; }
    double period(int axis) const { return count(axis) * step_; }
    std::size_t size() const;

    /// Stride of one index step along `axis` in flat storage.
    std::size_t stride(int axis) const;

    /// Flat index of an (already wrapped) 0-based multi-index.
    std::size_t flat(int i, int j = 0, int k = 0) const {
        return (static_cast<std::size_t>(i) * static_cast<std::size_t>(counts_[1]) +
                static_cast<std::size_t>(j)) *
                   static_cast<std::size_t>(counts_[2]) +
               static_cast<std::size_t>(k);
    }

    /// Coordinates of the lattice point with flat index `idx`.
    Point coords(std::size_t idx) const;

    /// 0-based multi-index of a flat index.
    std::array<int, 3> unflat(std::size_t idx) const;

    /// Wraps a 0-based index into [0, N_axis).
    int wrap0(int axis, long i) const;

    bool operator==(const GridSpec&) const = default;

private:
    int dim_ = 1;
    std::array<int, 3> counts_{3, 1, 1};
    double step_ = 1.0;
};

/// Reduces a 1-based lattice index modulo N_axis into [1, N_axis], so that
/// index 0 aliases N_axis and N_axis+1 aliases 1.
int wrap_index(const GridSpec& grid, int axis, long i);

/// Periodic multilinear interpolation of a lattice frame at x.
double interp_lattice(const GridSpec& g, std::span<const double> frame, const Point& x);

/// Growth speed rho(t) sampled at strictly increasing knots starting at 0;
/// evaluated piecewise linearly.
class SampledSpeed {
public:
    SampledSpeed(std::vector<double> knots, std::vector<double> values);

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    double horizon() const { return knots_.back(); }

    /// Throws RangeError outside [0, horizon].
    double operator()(double t) const;

private:
    std::vector<double> knots_;
    std::vector<double> values_;
};

/// Nucleation rate alpha(x,t) given as one lattice frame per time knot.
class SampledRate {
public:
    SampledRate(GridSpec grid, std::vector<double> knots, std::vector<std::vector<double>> frames);

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<std::vector<double>>& frames() const { return frames_; }
    double horizon() const { return knots_.back(); }

    double operator()(const Point& x, double t) const;

private:
    GridSpec grid_;
    std::vector<double> knots_;
    std::vector<std::vector<double>> frames_;
};

/// Nucleation rate given by a closed-form expression (scenario presets).
/// Arguments are reduced into the fundamental cell [0, L)^d before `fn` is
/// called, so the rate is periodic like the lattice it lives on.
struct AnalyticRate {
    GridSpec grid;
    double horizon = 0.0;
    std::string name;
    std::function<double(const Point&, double)> fn;
};

/// Either representation of alpha behind one evaluation interface.
class Rate {
public:
    Rate(SampledRate sampled);
    Rate(AnalyticRate analytic);

    const GridSpec& grid() const;
    double horizon() const;
    bool is_sampled() const { return std::holds_alternative<SampledRate>(impl_); }
    const SampledRate* sampled() const { return std::get_if<SampledRate>(&impl_); }

    /// Unchecked evaluation; callers validate t.
    double value(const Point& x, double t) const;

private:
    std::variant<SampledRate, AnalyticRate> impl_;
};

/// Periodic multilinear in space, linear in time. Throws RangeError for t outside [0,T].
double eval_rate(const Rate& rate, const Point& x, double t);

/// Piecewise-linear rho(t). Throws RangeError for t outside [0,T].
double eval_speed(const SampledSpeed& speed, double t);

/// Samples a closed-form rate on its lattice at the given knots.
SampledRate sample_rate(const Rate& rate, const std::vector<double>& knots);

enum class Quantity { U0, U1, u, F };

std::string to_string(Quantity q);

/// Time-indexed lattice fields. Level n carries the stamp `stamps[n]`, which
/// is a warped time tau_n for U0/U1/F and a physical time t_n for u.
struct FieldSeries {
    GridSpec grid;
    Quantity label = Quantity::U0;
    std::vector<std::vector<double>> levels;
    std::vector<double> stamps;

    FieldSeries() = default;
    FieldSeries(GridSpec g, Quantity q, std::size_t n_levels);

    std::size_t n_levels() const { return levels.size(); }
    std::span<double> level(std::size_t n) { return levels[n]; }
    std::span<const double> level(std::size_t n) const { return levels[n]; }

    /// Throws GridMismatchError if any level does not match the grid size.
    void validate() const;

    bool operator==(const FieldSeries&) const = default;
};

}  // namespace tcone
