#include "tcone/brackets.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "tcone/detail/quadrature.hpp"
#include "tcone/errors.hpp"

namespace tcone {

double ConstantField::laplacian_power(int j, std::span<const double>, double) const {
    return j == 0 ? c_ : 0.0;
}

double ConstantField::sup_norm() const { return std::abs(c_); }

std::string ConstantField::name() const {
    std::ostringstream os;
    os << "const(" << c_ << ")";
    return os.str();
}

ModeField::ModeField(double c0, double amplitude, std::array<double, 3> wavevector,
                     std::array<double, 3> phases, double gamma)
    : c0_(c0), amp_(amplitude), k_(wavevector), phase_(phases), gamma_(gamma) {}

double ModeField::laplacian_power(int j, std::span<const double> y, double zeta) const {
    double prod = amp_ * (1.0 + gamma_ * zeta);
    double k2 = 0.0;
    for (std::size_t l = 0; l < y.size(); ++l) {
        prod *= std::cos(k_[l] * y[l] + phase_[l]);
        k2 += k_[l] * k_[l];
    }
    if (j == 0) return c0_ + prod;
    return std::pow(-k2, j) * prod;
}

double ModeField::sup_norm() const {
    return std::abs(c0_) + std::abs(amp_) * std::max(1.0, std::abs(1.0 + 2.0 * gamma_));
}

std::string ModeField::name() const {
    std::ostringstream os;
    os << "mode(c0=" << c0_ << ",A=" << amp_ << ",k=" << k_[0] << "/" << k_[1] << "/" << k_[2]
       << ",gamma=" << gamma_ << ")";
    return os.str();
}

ModeField ModeField::sine_x(double amplitude) {
    return ModeField(0.0, amplitude, {1.0, 0.0, 0.0}, {-std::numbers::pi / 2.0, 0.0, 0.0});
}

ModeField ModeField::perturbed_constant(double eps) {
    return ModeField(1.0, eps, {1.0, 0.0, 0.0}, {-std::numbers::pi / 2.0, 0.0, 0.0});
}

QuadraticField::QuadraticField(double a, double b, std::array<double, 3> center, double reach)
    : a_(a), b_(b), center_(center), reach_(reach) {}

double QuadraticField::laplacian_power(int j, std::span<const double> y, double zeta) const {
    const double amp = a_ + b_ * zeta;
    if (j == 0) {
        double r2 = 0.0;
        for (std::size_t l = 0; l < y.size(); ++l) {
            const double d = y[l] - center_[l];
            r2 += d * d;
        }
        return amp * r2;
    }
    if (j == 1) return 2.0 * static_cast<double>(y.size()) * amp;
    return 0.0;
}

double QuadraticField::sup_norm() const {
    return (std::abs(a_) + 2.0 * std::abs(b_)) * reach_ * reach_;
}

std::string QuadraticField::name() const {
    std::ostringstream os;
    os << "quadratic(a=" << a_ << ",b=" << b_ << ")";
    return os.str();
}

void BracketSpec::validate() const {
    if (dim != 2 && dim != 3) {
        throw SpecError("brackets are implemented for d = 2, 3 only");
    }
    if (j < 0) throw SpecError("Laplacian power must be nonnegative");
    const int k_max = (kind == BracketKind::Surface) ? dim - 1 : dim;
    if (k < 0 || k > k_max) {
        throw SpecError("bracket " + label() + " needs 0 <= k <= " + std::to_string(k_max));
    }
}

std::string BracketSpec::label() const {
    std::ostringstream os;
    os << "[" << k << "," << (kind == BracketKind::Surface ? "S" : "B") << dim << ",Lap^" << j << "]";
    return os.str();
}

double unit_sphere_area(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
        default: throw ArgumentError("unsupported dimension " + std::to_string(dim));
    }
}

namespace {

double sphere_mean(const SmoothField& field, int j, std::span<const double> x, double radius,
                   double zeta, const detail::SphereRule& sphere) {
    std::array<double, 3> y{0.0, 0.0, 0.0};
    const std::size_t d = x.size();
    double acc = 0.0;
    for (std::size_t a = 0; a < sphere.dirs.size(); ++a) {
        for (std::size_t l = 0; l < d; ++l) y[l] = x[l] + radius * sphere.dirs[a][l];
        acc += sphere.weights[a] * field.laplacian_power(j, std::span<const double>(y.data(), d), zeta);
    }
    return acc;
}

void check_point(const BracketSpec& spec, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(spec.dim)) {
        throw ArgumentError("point dimension does not match bracket dimension");
    }
}

}  // namespace

double eval_bracket(const BracketSpec& spec, const SmoothField& field, std::span<const double> x,
                    double tau, const ConeQuadSpec& quad) {
    spec.validate();
    quad.validate();
    check_point(spec, x);
    if (!(tau >= 0.0)) throw ArgumentError("bracket needs tau >= 0");
    if (tau == 0.0) return 0.0;

    const int d = spec.dim;
    const detail::UnitTrapezoid time_rule(quad.n_s);
    const detail::SphereRule sphere(d, quad.n_ang);
    double acc = 0.0;
    if (spec.kind == BracketKind::Surface) {
        const int power = d - spec.k - 1;
        for (std::size_t i = 0; i < time_rule.nodes.size(); ++i) {
            const double node = time_rule.nodes[i];
            const double zeta = tau * node;
            const double xi = tau * (1.0 - node);
            if (xi == 0.0 && power > 0) continue;
            acc += time_rule.weights[i] * detail::ipow(xi, power) *
                   sphere_mean(field, spec.j, x, xi, zeta, sphere);
        }
    } else {
        const detail::UnitTrapezoid radial(quad.n_r);
        const int power = d - spec.k;
        for (std::size_t i = 0; i < time_rule.nodes.size(); ++i) {
            const double node = time_rule.nodes[i];
            const double zeta = tau * node;
            const double xi = tau * (1.0 - node);
            if (xi == 0.0 && power > 0) continue;
            double inner = 0.0;
            for (std::size_t b = 1; b < radial.nodes.size(); ++b) {
                const double lam = radial.nodes[b];
                inner += radial.weights[b] * detail::ipow(lam, d - 1) *
                         sphere_mean(field, spec.j, x, xi * lam, zeta, sphere);
            }
            acc += time_rule.weights[i] * detail::ipow(xi, power) * inner;
        }
    }
    return tau * acc;
}

namespace {

double fd_laplacian(const BracketSpec& spec, const SmoothField& field, std::span<const double> x,
                    double tau, double h, const ConeQuadSpec& quad) {
    const double center = eval_bracket(spec, field, x, tau, quad);
    std::vector<double> y(x.begin(), x.end());
    double lap = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) {
        y[l] = x[l] + h;
        const double plus = eval_bracket(spec, field, y, tau, quad);
        y[l] = x[l] - h;
        const double minus = eval_bracket(spec, field, y, tau, quad);
        y[l] = x[l];
        lap += (plus - 2.0 * center + minus) / (h * h);
    }
    return lap;
}

}  // namespace

double check_laplace_identity(const BracketSpec& spec, const SmoothField& field,
                              std::span<const double> x, double tau, double h,
                              const ConeQuadSpec& quad) {
    if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");
    BracketSpec next = spec;
    next.j += 1;
    return std::abs(fd_laplacian(spec, field, x, tau, h, quad) - eval_bracket(next, field, x, tau, quad));
}

double check_time_identities(const BracketSpec& spec, const SmoothField& field,
                             std::span<const double> x, double tau, double h,
                             const ConeQuadSpec& quad) {
    spec.validate();
    if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");
    if (tau - h < 0.0) throw ArgumentError("time identity needs tau - h >= 0");
    const int d = spec.dim;
    const int k = spec.k;
    if (spec.kind == BracketKind::Ball && k > d - 1) {
        throw SpecError("tau-derivative identity for balls needs k <= d-1");
    }
    const double dq = (eval_bracket(spec, field, x, tau + h, quad) -
                       eval_bracket(spec, field, x, tau - h, quad)) / (2.0 * h);
    double rhs = 0.0;
    if (spec.kind == BracketKind::Surface) {
        const BracketSpec ball_next{BracketKind::Ball, k, spec.j + 1, d};
        if (k < d - 1) {
            const BracketSpec surf_up{BracketKind::Surface, k + 1, spec.j, d};
            rhs = (d - k - 1) * eval_bracket(surf_up, field, x, tau, quad) +
                  eval_bracket(ball_next, field, x, tau, quad);
        } else {
            rhs = unit_sphere_area(d) * field.laplacian_power(spec.j, x, tau) +
                  eval_bracket(ball_next, field, x, tau, quad);
        }
    } else {
        const BracketSpec surf{BracketKind::Surface, k, spec.j, d};
        rhs = eval_bracket(surf, field, x, tau, quad);
        if (k > 0) {
            const BracketSpec ball_up{BracketKind::Ball, k + 1, spec.j, d};
            rhs -= k * eval_bracket(ball_up, field, x, tau, quad);
        }
    }
    return std::abs(dq - rhs);
}

double verify_gov_U1_3d(const SmoothField& field, std::span<const double> x, double tau, double h,
                        const ConeQuadSpec& quad) {
    if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");
    if (tau - h < 0.0) throw ArgumentError("governing-equation check needs tau - h >= 0");
    const BracketSpec u1{BracketKind::Surface, 1, 0, 3};
    check_point(u1, x);
    const double center = eval_bracket(u1, field, x, tau, quad);
    const double dtt = (eval_bracket(u1, field, x, tau + h, quad) - 2.0 * center +
                        eval_bracket(u1, field, x, tau - h, quad)) / (h * h);
    const double lap = fd_laplacian(u1, field, x, tau, h, quad);
    return std::abs(dtt - lap - 4.0 * std::numbers::pi * field(x, tau));
}

}  // namespace tcone
