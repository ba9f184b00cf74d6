#include "tcone/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <random>

#include "tcone/brackets.hpp"
#include "tcone/coefficients.hpp"
#include "tcone/errors.hpp"
#include "tcone/field_io.hpp"
#include "tcone/scenarios.hpp"

namespace tcone {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Value of the unwarped series at an arbitrary (x, t).
double interpolate_series(const FieldSeries& u, const Point& x, double t) {
    const auto& st = u.stamps;
    if (!(t >= st.front() && t <= st.back())) throw RangeError("sample time outside the solved horizon");
    auto it = std::upper_bound(st.begin(), st.end(), t);
    std::size_t seg = (it == st.begin()) ? 0 : static_cast<std::size_t>(it - st.begin()) - 1;
    seg = std::min(seg, st.size() - 2);
    const double w = (t - st[seg]) / (st[seg + 1] - st[seg]);
    const double a = interp_lattice(u.grid, u.levels[seg], x);
    const double b = interp_lattice(u.grid, u.levels[seg + 1], x);
    return (1.0 - w) * a + w * b;
}

std::string fmt(double v, const char* spec = "%.6e") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
}

std::map<std::string, std::string> artifact_tokens(const RunConfig& cfg) {
    return {{"config", config_hash(cfg)}, {"sign", kSignConvention}};
}

}  // namespace

Problem build_problem(const RunConfig& cfg, int n_tau) {
    if (cfg.data) {
        const FieldSeries frames = read_field(cfg.data->rate);
        SampledSpeed speed = read_speed_csv(cfg.data->speed);
        Rate rate(SampledRate(frames.grid, frames.stamps, frames.levels));
        TimeWarp warp = build_warp(speed, n_tau);
        FieldSeries f = warped_source(rate, speed, warp);
        const SchemeParams params = SchemeParams::make(cfg.eta, warp.dtau, frames.grid.step(), cfg.start);
        return Problem{std::move(rate), std::move(speed), std::move(warp), std::move(f), params};
    }
    Scenario s = make_scenario(cfg.scenario);
    TimeWarp warp = build_warp(s.speed, n_tau);
    FieldSeries f = warped_source(s.rate, s.speed, warp);
    const SchemeParams params = SchemeParams::make(cfg.eta, warp.dtau, s.rate.grid().step(), cfg.start);
    return Problem{std::move(s.rate), std::move(s.speed), std::move(warp), std::move(f), params};
}

SolveOutcome run_solve(const RunConfig& cfg) {
    Problem p = build_problem(cfg, cfg.n_tau);
    SolveReport report = solve(p.f, p.params, SolveOptions{cfg.threads, cfg.n_theta});
    FieldSeries u = unwarp(report, p.warp);
    return SolveOutcome{std::move(p), std::move(report), std::move(u)};
}

std::vector<ComparePoint> draw_samples(const RunConfig& cfg, const Problem& problem) {
    std::vector<ComparePoint> pts;
    if (!cfg.samples.points.empty()) {
        for (const auto& sp : cfg.samples.points) {
            ComparePoint c;
            c.x = sp.x;
            c.t = sp.t;
            pts.push_back(c);
        }
        return pts;
    }
    const GridSpec& g = problem.f.grid;
    const auto n = static_cast<std::size_t>(problem.warp.n_tau());
    const auto lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(cfg.samples.level_from * static_cast<double>(n))));
    std::mt19937_64 gen(cfg.samples.seed);
    for (int k = 0; k < cfg.samples.count; ++k) {
        ComparePoint c;
        c.idx = static_cast<std::size_t>(gen() % g.size());
        c.level = lo + static_cast<std::size_t>(gen() % (n - lo + 1));
        c.x = g.coords(c.idx);
        c.t = problem.warp.t_hat[c.level];
        pts.push_back(c);
    }
    return pts;
}

CompareResult run_compare(const RunConfig& cfg) {
    CompareResult res;
    const auto t0 = Clock::now();
    const SolveOutcome out = run_solve(cfg);
    res.solver_seconds = seconds_since(t0);

    res.points = draw_samples(cfg, out.problem);
    const bool lattice = cfg.samples.points.empty();
    std::vector<SamplePoint> where;
    for (auto& c : res.points) {
        c.solver = lattice ? out.u.levels[c.level][c.idx] : interpolate_series(out.u, c.x, c.t);
        where.push_back(SamplePoint{c.x, c.t});
    }
    const auto t1 = Clock::now();
    const auto oracle = direct_u_batch(out.problem.rate, out.problem.warp, where, cfg.oracle, cfg.threads);
    res.oracle_seconds = seconds_since(t1);
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        auto& c = res.points[i];
        c.oracle = oracle[i].value;
        c.wraps = oracle[i].wraps;
        c.rel = std::abs(c.solver - c.oracle) / std::max(c.oracle, 1e-6);
        res.max_rel = std::max(res.max_rel, c.rel);
    }
    return res;
}

ConvergenceResult run_convergence(const RunConfig& cfg) {
    ConvergenceResult res;
    std::array<std::vector<double>, 3> finals;
    for (int i = 0; i < 3; ++i) {
        RunConfig c = cfg;
        c.n_tau = cfg.n_tau << i;
        res.n_tau[static_cast<std::size_t>(i)] = c.n_tau;
        const SolveOutcome out = run_solve(c);
        finals[static_cast<std::size_t>(i)] = out.u.levels.back();
    }
    res.diff_coarse = max_abs_diff(finals[0], finals[1]);
    res.diff_fine = max_abs_diff(finals[1], finals[2]);
    res.order = std::log2(res.diff_coarse / res.diff_fine);
    return res;
}

BenchResult run_bench(const RunConfig& cfg) {
    BenchResult res;
    const auto t0 = Clock::now();
    const SolveOutcome out = run_solve(cfg);
    res.solver_seconds = seconds_since(t0);

    const GridSpec& g = out.u.grid;
    res.lattice_points = g.size();
    res.timed_points = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.bench_points), g.size()));
    std::vector<SamplePoint> where;
    const double T = out.problem.warp.horizon();
    for (int k = 0; k < res.timed_points; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k) * g.size() / static_cast<std::size_t>(res.timed_points);
        where.push_back(SamplePoint{g.coords(idx), T});
    }
    const auto t1 = Clock::now();
    direct_u_batch(out.problem.rate, out.problem.warp, where, cfg.oracle, cfg.threads);
    const double oracle_seconds = seconds_since(t1);
    res.oracle_seconds_per_point = oracle_seconds / res.timed_points;
    res.oracle_seconds_full = res.oracle_seconds_per_point * static_cast<double>(res.lattice_points);
    res.ratio = res.oracle_seconds_full / res.solver_seconds;
    return res;
}

std::vector<IdentityRow> identity_suite(const std::vector<double>& steps, const std::vector<int>& panels,
                                        double tau) {
    if (steps.size() != panels.size() || steps.empty()) {
        throw ArgumentError("identity suite needs one panel count per step");
    }
    struct Named {
        std::string name;
        std::shared_ptr<SmoothField> field;
    };
    const std::vector<Named> fields{
        {"mode", std::make_shared<ModeField>(1.0, 0.5, std::array<double, 3>{1.0, 0.7, 0.5},
                                             std::array<double, 3>{0.3, 0.2, 0.1}, 0.5)},
        {"perturbed-constant", std::make_shared<ModeField>(ModeField::perturbed_constant(0.2))},
        {"quadratic", std::make_shared<QuadraticField>(1.0, 0.5, std::array<double, 3>{0.1, 0.2, 0.3}, 2.0)},
    };
    const std::array<double, 3> x3{0.3, -0.2, 0.1};

    std::vector<IdentityRow> rows;
    for (const auto& nf : fields) {
        const double scale = nf.field->sup_norm();
        for (int d = 2; d <= 3; ++d) {
            const std::span<const double> x(x3.data(), static_cast<std::size_t>(d));
            for (BracketKind kind : {BracketKind::Surface, BracketKind::Ball}) {
                const int k_max = kind == BracketKind::Surface ? d - 1 : d;
                for (int k = 0; k <= k_max; ++k) {
                    const BracketSpec spec{kind, k, 0, d};
                    IdentityRow lap{nf.name, "laplace " + spec.label(), steps, {}};
                    for (std::size_t i = 0; i < steps.size(); ++i) {
                        const ConeQuadSpec q{panels[i], panels[i], panels[i]};
                        lap.residual.push_back(check_laplace_identity(spec, *nf.field, x, tau, steps[i], q) / scale);
                    }
                    rows.push_back(std::move(lap));
                    if (kind == BracketKind::Ball && k == d) continue;
                    IdentityRow tim{nf.name, "d/dtau " + spec.label(), steps, {}};
                    for (std::size_t i = 0; i < steps.size(); ++i) {
                        const ConeQuadSpec q{panels[i], panels[i], panels[i]};
                        tim.residual.push_back(check_time_identities(spec, *nf.field, x, tau, steps[i], q) / scale);
                    }
                    rows.push_back(std::move(tim));
                }
            }
        }
        IdentityRow gov{nf.name, "governing U1 (d=3)", steps, {}};
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const ConeQuadSpec q{panels[i], panels[i], panels[i]};
            gov.residual.push_back(verify_gov_U1_3d(*nf.field, x3, tau, steps[i], q) / scale);
        }
        rows.push_back(std::move(gov));
    }
    return rows;
}

int run(const RunConfig& cfg, std::ostream& log) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string hash = config_hash(cfg);
    json cfg_json = config_to_json(cfg);
    cfg_json.erase("threads");
    cfg_json["output"].erase("dir");
    // Informational only; the loader ignores it and the hash never covers it.
    cfg_json["provenance"] = {{"config_hash", hash}, {"sign_convention", kSignConvention}};
    write_text(cfg.out_dir / "config.json", cfg_json.dump(2) + "\n");
    // Provenance line for the text artifacts; binary snapshots carry the same tokens.
    const std::string tag = "config=" + hash + " sign=" + kSignConvention;
    const std::string tag_line = "# " + tag + "\n";
    log << "mode " << to_string(cfg.mode) << ", config " << hash << ", scheme middle weight " << kSignConvention
        << ", start " << to_string(cfg.start) << "\n";

    switch (cfg.mode) {
        case RunMode::Solve: {
            const SolveOutcome out = run_solve(cfg);
            const auto tokens = artifact_tokens(cfg);
            write_field(out.report.u0, cfg.out_dir / "U0.tcone", tokens);
            if (out.report.u1) write_field(*out.report.u1, cfg.out_dir / "U1.tcone", tokens);
            write_field(out.u, cfg.out_dir / "u.tcone", tokens);
            write_speed_csv(out.problem.speed, cfg.out_dir / "speed.csv", tag);
            if (cfg.csv && out.u.grid.dim() == 1) write_csv_1d(out.u, cfg.out_dir / "u.csv", tag);

            const auto& last = out.u.levels.back();
            const auto [lo, hi] = std::minmax_element(last.begin(), last.end());
            json summary{{"config_hash", hash},
                         {"sign_convention", kSignConvention},
                         {"start_rule", to_string(cfg.start)},
                         {"stability", out.report.stability_note},
                         {"dim", out.u.grid.dim()},
                         {"n_tau", out.problem.warp.n_tau()},
                         {"dtau", out.problem.warp.dtau},
                         {"R_T", out.problem.warp.total()},
                         {"T", out.problem.warp.horizon()},
                         {"final_u_min", *lo},
                         {"final_u_max", *hi},
                         {"final_P_min", phase_fraction(std::max(0.0, *lo))},
                         {"final_P_max", phase_fraction(std::max(0.0, *hi))}};
            write_text(cfg.out_dir / "summary.json", summary.dump(2) + "\n");
            log << out.report.stability_note << "\n"
                << "levels " << out.u.n_levels() << ", R(T) = " << fmt(out.problem.warp.total()) << "\n"
                << "final u in [" << fmt(*lo, "%.12e") << ", " << fmt(*hi, "%.12e") << "]\n"
                << "final P in [" << fmt(phase_fraction(std::max(0.0, *lo))) << ", "
                << fmt(phase_fraction(std::max(0.0, *hi))) << "]\n"
                << "solver wall time " << fmt(out.report.wall_seconds, "%.3f") << " s\n";
            return 0;
        }
        case RunMode::Oracle: {
            const Problem p = build_problem(cfg, cfg.n_tau);
            const auto pts = draw_samples(cfg, p);
            std::vector<SamplePoint> where;
            for (const auto& c : pts) where.push_back(SamplePoint{c.x, c.t});
            const auto res = direct_u_batch(p.rate, p.warp, where, cfg.oracle, cfg.threads);
            std::string csv = tag_line + "x0,x1,x2,t,u,P,wraps\n";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                csv += fmt(pts[i].x[0], "%.17g") + "," + fmt(pts[i].x[1], "%.17g") + "," + fmt(pts[i].x[2], "%.17g") +
                       "," + fmt(pts[i].t, "%.17g") + "," + fmt(res[i].value, "%.17g") + "," +
                       fmt(phase_fraction(std::max(0.0, res[i].value)), "%.17g") + "," + (res[i].wraps ? "1" : "0") +
                       "\n";
            }
            write_text(cfg.out_dir / "oracle.csv", csv);
            log << "oracle evaluated at " << pts.size() << " points -> oracle.csv\n";
            return 0;
        }
        case RunMode::Compare: {
            const CompareResult res = run_compare(cfg);
            std::string csv = tag_line + "x0,x1,x2,t,solver,oracle,rel,wraps\n";
            for (const auto& c : res.points) {
                csv += fmt(c.x[0], "%.17g") + "," + fmt(c.x[1], "%.17g") + "," + fmt(c.x[2], "%.17g") + "," +
                       fmt(c.t, "%.17g") + "," + fmt(c.solver, "%.17g") + "," + fmt(c.oracle, "%.17g") + "," +
                       fmt(c.rel, "%.17g") + "," + (c.wraps ? "1" : "0") + "\n";
                log << "t=" << fmt(c.t, "%.5f") << " solver=" << fmt(c.solver) << " oracle=" << fmt(c.oracle)
                    << " rel=" << fmt(c.rel, "%.3e") << (c.wraps ? " (cone wraps)" : "") << "\n";
            }
            write_text(cfg.out_dir / "compare.csv", csv);
            log << "max relative difference " << fmt(res.max_rel, "%.4e") << "\n"
                << "solver " << fmt(res.solver_seconds, "%.3f") << " s, oracle " << fmt(res.oracle_seconds, "%.3f")
                << " s\n";
            return 0;
        }
        case RunMode::Convergence: {
            const ConvergenceResult res = run_convergence(cfg);
            json j{{"config_hash", hash},
                   {"sign_convention", kSignConvention},
                   {"n_tau", res.n_tau},
                   {"diff_coarse", res.diff_coarse},
                   {"diff_fine", res.diff_fine},
                   {"order", res.order}};
            write_text(cfg.out_dir / "convergence.json", j.dump(2) + "\n");
            log << "N_tau " << res.n_tau[0] << "/" << res.n_tau[1] << "/" << res.n_tau[2] << ": |U_h - U_h/2| = "
                << fmt(res.diff_coarse) << ", |U_h/2 - U_h/4| = " << fmt(res.diff_fine) << "\n"
                << "observed order " << fmt(res.order, "%.3f") << "\n";
            return 0;
        }
        case RunMode::Bench: {
            const BenchResult res = run_bench(cfg);
            json j{{"config_hash", hash},
                   {"sign_convention", kSignConvention},
                   {"solver_seconds", res.solver_seconds},
                   {"oracle_seconds_per_point", res.oracle_seconds_per_point},
                   {"oracle_seconds_full_lattice", res.oracle_seconds_full},
                   {"lattice_points", res.lattice_points},
                   {"timed_points", res.timed_points},
                   {"ratio", res.ratio}};
            write_text(cfg.out_dir / "bench.json", j.dump(2) + "\n");
            log << "solver " << fmt(res.solver_seconds, "%.3f") << " s; oracle " << fmt(res.oracle_seconds_per_point)
                << " s/point x " << res.lattice_points << " points = " << fmt(res.oracle_seconds_full, "%.1f")
                << " s (timed on " << res.timed_points << " points)\n"
                << "speedup " << fmt(res.ratio, "%.1f") << "x\n";
            return 0;
        }
        case RunMode::Coeffs: {
            std::string text = format_pmk_table(cfg.m_max) + "\n" + format_cmk_table(cfg.m_max) + "\n";
            bool ok = true;
            for (int m = 1; m <= cfg.m_max; ++m) {
                if (m >= 2) ok = ok && verify_pmk_identity(m);
                if (m >= 3) ok = ok && verify_cmk_identity(m);
                ok = ok && p1_product_check(m) && sigma_identity_check(m);
            }
            for (int m = 0; m <= cfg.m_max; ++m) {
                text += "source multiplier m=" + std::to_string(m) + ": " + source_multiplier(m).to_string() + "\n";
            }
            text += std::string("identities up to m=") + std::to_string(cfg.m_max) + ": " + (ok ? "hold" : "FAIL") + "\n";
            write_text(cfg.out_dir / "coeffs.txt", tag_line + text);
            log << text;
            return ok ? 0 : 1;
        }
        case RunMode::Identities: {
            const std::vector<double> steps{0.04, 0.02, 0.01};
            const auto rows = identity_suite(steps, {16, 32, 64}, 0.5);
            std::string csv = tag_line + "field,check,h,residual\n";
            for (const auto& r : rows) {
                log << r.field << " " << r.check << ":";
                for (std::size_t i = 0; i < r.step.size(); ++i) {
                    log << " " << fmt(r.residual[i], "%.3e");
                    csv += r.field + "," + r.check + "," + fmt(r.step[i], "%.17g") + "," + fmt(r.residual[i], "%.17g") + "\n";
                }
                log << "\n";
            }
            write_text(cfg.out_dir / "identities.csv", csv);
            bool ok = true;
            for (int m = 1; m <= 16; ++m) {
                if (m >= 2) ok = ok && verify_pmk_identity(m);
                if (m >= 3) ok = ok && verify_cmk_identity(m);
                ok = ok && p1_product_check(m) && sigma_identity_check(m);
            }
            log << "coefficient identities up to m=16: " << (ok ? "hold" : "FAIL") << "\n";
            return ok ? 0 : 1;
        }
    }
    return 1;
}

}  // namespace tcone
