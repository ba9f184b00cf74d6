#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tcone/field_core.hpp"

namespace tcone::detail {

/// Composite trapezoid nodes and weights on [0, 1].
struct UnitTrapezoid {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit UnitTrapezoid(int panels) : nodes(static_cast<std::size_t>(panels) + 1), weights(nodes.size()) {
        const double h = 1.0 / panels;
        for (int i = 0; i <= panels; ++i) {
            nodes[static_cast<std::size_t>(i)] = (i == panels) ? 1.0 : i * h;
            weights[static_cast<std::size_t>(i)] = (i == 0 || i == panels) ? 0.5 * h : h;
        }
    }
};

/// Directions on the unit sphere S^{d-1} with trapezoid weights.
///
/// d = 2: periodic trapezoid in the angle. d = 3: trapezoid in mu = cos(phi1)
/// on [-1, 1] (so q(phi) dphi1 = dmu) times periodic trapezoid in phi2.
/// d = 1: the two points +-1 with unit weight. Weights sum to sigma_d exactly
/// in exact arithmetic.
struct SphereRule {
    std::vector<Point> dirs;
    std::vector<double> weights;

    SphereRule(int dim, int n_ang) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        if (dim == 1) {
            dirs = {Point{1.0, 0.0, 0.0}, Point{-1.0, 0.0, 0.0}};
            weights = {1.0, 1.0};
        } else if (dim == 2) {
            const double h = two_pi / n_ang;
            for (int i = 0; i < n_ang; ++i) {
                const double th = i * h;
                dirs.push_back(Point{std::cos(th), std::sin(th), 0.0});
                weights.push_back(h);
            }
        } else {
            const UnitTrapezoid mu_rule(n_ang);
            const double hphi = two_pi / n_ang;
            for (std::size_t a = 0; a < mu_rule.nodes.size(); ++a) {
                const double mu = 2.0 * mu_rule.nodes[a] - 1.0;
                const double w_mu = 2.0 * mu_rule.weights[a];
                const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
                for (int b = 0; b < n_ang; ++b) {
                    const double ph = b * hphi;
                    dirs.push_back(Point{mu, s * std::cos(ph), s * std::sin(ph)});
                    weights.push_back(w_mu * hphi);
                }
            }
        }
    }
};

inline double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace tcone::detail
