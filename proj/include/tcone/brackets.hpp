#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>

#include "tcone/cone_oracle.hpp"

namespace tcone {

/// Smooth source F(y, zeta) that can report its iterated Laplacians
/// analytically, as needed by the bracket identities.
class SmoothField {
public:
    virtual ~SmoothField() = default;

    /// Delta^j F at (y, zeta); y.size() is the spatial dimension.
    virtual double laplacian_power(int j, std::span<const double> y, double zeta) const = 0;

    /// Upper bound of |F| on the region the checks visit; scales residuals.
    virtual double sup_norm() const = 0;

    virtual std::string name() const = 0;

    double operator()(std::span<const double> y, double zeta) const { return laplacian_power(0, y, zeta); }
};

/// F = c.
class ConstantField final : public SmoothField {
public:
    explicit ConstantField(double c) : c_(c) {}
    double laplacian_power(int j, std::span<const double> y, double zeta) const override;
    double sup_norm() const override;
    std::string name() const override;

private:
    double c_;
};

/// F = c0 + A (1 + gamma zeta) prod_l cos(k_l y_l + phase_l).
class ModeField final : public SmoothField {
public:
    ModeField(double c0, double amplitude, std::array<double, 3> wavevector,
              std::array<double, 3> phases, double gamma = 0.0);
    double laplacian_power(int j, std::span<const double> y, double zeta) const override;
    double sup_norm() const override;
    std::string name() const override;

    /// sin(y_1) as a mode field.
    static ModeField sine_x(double amplitude = 1.0);
    /// 1 + eps sin(y_1).
    static ModeField perturbed_constant(double eps);

private:
    double c0_;
    double amp_;
    std::array<double, 3> k_;
    std::array<double, 3> phase_;
    double gamma_;
};

/// F = (a + b zeta) |y - center|^2; Delta F = 2 d (a + b zeta), Delta^2 F = 0.
class QuadraticField final : public SmoothField {
public:
    QuadraticField(double a, double b, std::array<double, 3> center = {0.0, 0.0, 0.0},
                   double reach = 4.0);
    double laplacian_power(int j, std::span<const double> y, double zeta) const override;
    double sup_norm() const override;
    std::string name() const override;

private:
    double a_;
    double b_;
    std::array<double, 3> center_;
    double reach_;
};

enum class BracketKind { Surface, Ball };

/// [k, S_d, Delta^j] (Surface) or [k, B_d, Delta^j] (Ball), d in {2, 3}.
struct BracketSpec {
    BracketKind kind = BracketKind::Surface;
    int k = 0;
    int j = 0;
    int dim = 3;

    /// Throws SpecError unless d in {2,3}, j >= 0, 0 <= k <= d-1 (Surface) or d (Ball).
    void validate() const;
    std::string label() const;
};

/// Surface area of the unit sphere in R^d (d = 1..3).
double unit_sphere_area(int dim);

/// Polar-coordinate trapezoid evaluation of the bracket at (x, tau).
///
/// Surface: int_0^tau (tau-zeta)^{d-k-1} int_{S^{d-1}} Delta^j F(x + (tau-zeta) p, zeta) dp dzeta.
/// Ball uses ell = (tau-zeta) lambda, lambda in [0,1]:
/// int_0^tau (tau-zeta)^{d-k} int_0^1 lambda^{d-1} int_{S^{d-1}} Delta^j F(x + (tau-zeta) lambda p, zeta).
/// Panels: n_s in zeta, n_r in lambda, n_ang per angle. Returns exactly 0 at tau = 0.
double eval_bracket(const BracketSpec& spec, const SmoothField& field, std::span<const double> x,
                    double tau, const ConeQuadSpec& quad);

/// |sum_l (Q(x + h e_l) - 2 Q(x) + Q(x - h e_l)) / h^2 - [k, ., Delta^{j+1}](x)|.
double check_laplace_identity(const BracketSpec& spec, const SmoothField& field,
                              std::span<const double> x, double tau, double h,
                              const ConeQuadSpec& quad);

/// Residual of the tau-derivative identity selected by `spec`: the centered
/// difference (Q(tau+h) - Q(tau-h)) / 2h against
///   Surface, k < d-1: (d-k-1) [k+1, S] + [k, B, Delta^{j+1}]
///   Surface, k = d-1: sigma_d Delta^j F(x, tau) + [d-1, B, Delta^{j+1}]
///   Ball, k <= d-1:   -k [k+1, B] + [k, S]
/// Throws SpecError for Ball with k = d, and ArgumentError when tau - h < 0.
double check_time_identities(const BracketSpec& spec, const SmoothField& field,
                             std::span<const double> x, double tau, double h,
                             const ConeQuadSpec& quad);

/// Residual |(d_tau^2 - Delta) [1, S_3, Delta^0] - 4 pi F| at (x, tau), all
/// derivatives by centered differences with step h.
double verify_gov_U1_3d(const SmoothField& field, std::span<const double> x, double tau, double h,
                        const ConeQuadSpec& quad);

}  // namespace tcone
