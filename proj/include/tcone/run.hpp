#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "tcone/config.hpp"
#include "tcone/solvers.hpp"
#include "tcone/timewarp.hpp"

namespace tcone {

/// The scheme convention printed with every artifact.
inline constexpr const char* kSignConvention = "+(1-2eta)";

/// Inputs of one run: rate, speed, warp, warped source and scheme parameters.
struct Problem {
    Rate rate;
    SampledSpeed speed;
    TimeWarp warp;
    FieldSeries f;
    SchemeParams params;
};

/// Builds the preset or data-mode problem at `n_tau` warped steps.
/// Data mode rejects negative rate samples and mismatched knots.
Problem build_problem(const RunConfig& cfg, int n_tau);

struct SolveOutcome {
    Problem problem;
    SolveReport report;
    /// U_0 relabelled as u at the self-adaptive times.
    FieldSeries u;
};

SolveOutcome run_solve(const RunConfig& cfg);

struct ComparePoint {
    Point x{};
    double t = 0.0;
    /// Lattice index and level when the point was drawn from the lattice.
    std::size_t idx = 0;
    std::size_t level = 0;
    double solver = 0.0;
    double oracle = 0.0;
    /// |solver - oracle| / max(oracle, 1e-6)
    double rel = 0.0;
    bool wraps = false;
};

struct CompareResult {
    std::vector<ComparePoint> points;
    double max_rel = 0.0;
    double solver_seconds = 0.0;
    double oracle_seconds = 0.0;
};

/// Sample points of `cfg.samples` for this problem: explicit points, or
/// random lattice points at levels in [max(1, ceil(level_from N)), N].
std::vector<ComparePoint> draw_samples(const RunConfig& cfg, const Problem& problem);

/// Solver against the cone oracle at the configured sample points. Explicit
/// points off the lattice use multilinear interpolation in space and linear
/// interpolation between the self-adaptive times.
CompareResult run_compare(const RunConfig& cfg);

struct ConvergenceResult {
    std::array<int, 3> n_tau{};
    /// Max-norm differences of the final level: (N, 2N) and (2N, 4N).
    double diff_coarse = 0.0;
    double diff_fine = 0.0;
    double order = 0.0;
};

/// Richardson triple at n_tau, 2 n_tau, 4 n_tau on a fixed lattice.
ConvergenceResult run_convergence(const RunConfig& cfg);

struct BenchResult {
    double solver_seconds = 0.0;
    /// Oracle cost at the final time: measured on `timed_points` lattice points
    /// and scaled to all `lattice_points`.
    double oracle_seconds_per_point = 0.0;
    double oracle_seconds_full = 0.0;
    std::size_t lattice_points = 0;
    int timed_points = 0;
    double ratio = 0.0;
};

BenchResult run_bench(const RunConfig& cfg);

/// One residual sweep of a bracket identity over refinement steps.
struct IdentityRow {
    std::string field;
    std::string check;
    std::vector<double> step;
    /// Absolute residuals in units of the field's sup norm.
    std::vector<double> residual;
};

/// Laplace and tau-derivative identities for three smooth fields in d = 2, 3
/// plus the 3D U_1 governing equation, at finite-difference steps `steps[i]`
/// with all quadrature panel counts set to `panels[i]`.
std::vector<IdentityRow> identity_suite(const std::vector<double>& steps, const std::vector<int>& panels,
                                        double tau);

/// Executes the configured mode, writing artifacts to cfg.out_dir and a
/// human-readable summary to `log`. Returns the process exit status.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace tcone
