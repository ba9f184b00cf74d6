#include <CLI11.hpp>

#include <iostream>

#include "tcone/config.hpp"
#include "tcone/errors.hpp"
#include "tcone/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Time-cone phase transformation solver"};
    app.require_subcommand(1);

    struct Flags {
        std::string config;
        std::string out;
        std::uint64_t seed = 0;
        int threads = 0;
    };
    Flags flags;
    const std::pair<tcone::RunMode, const char*> modes[] = {
        {tcone::RunMode::Solve, "solve the warped hyperbolic system and write u"},
        {tcone::RunMode::Oracle, "evaluate the cone integral directly at sample points"},
        {tcone::RunMode::Compare, "compare solver and cone integral at sample points"},
        {tcone::RunMode::Convergence, "Richardson study at N_tau, 2 N_tau, 4 N_tau"},
        {tcone::RunMode::Bench, "solver wall time against the full-lattice cone integral"},
        {tcone::RunMode::Coeffs, "print and check the exact expansion coefficients"},
        {tcone::RunMode::Identities, "residuals of the bracket identities"},
    };
    std::vector<std::pair<CLI::App*, tcone::RunMode>> subs;
    for (const auto& [mode, help] : modes) {
        CLI::App* sub = app.add_subcommand(tcone::to_string(mode), help);
        sub->add_option("--config", flags.config, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", flags.out, "output directory (overrides output.dir)");
        sub->add_option("--seed", flags.seed, "seed for stochastic scenario fields");
        sub->add_option("--threads", flags.threads, "worker threads; never changes results")->check(CLI::PositiveNumber);
        subs.emplace_back(sub, mode);
    }
    CLI11_PARSE(app, argc, argv);

    try {
        tcone::RunConfig cfg = flags.config.empty() ? tcone::RunConfig{} : tcone::load_config(flags.config);
        for (const auto& [sub, mode] : subs) {
            if (sub->parsed()) {
                cfg.mode = mode;
                if (sub->count("--seed")) cfg.scenario.seed = flags.seed;
            }
        }
        if (!flags.out.empty()) cfg.out_dir = flags.out;
        if (flags.threads > 0) cfg.threads = flags.threads;
        return tcone::run(cfg, std::cout);
    } catch (const tcone::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const tcone::CflError& e) {
        std::cerr << "rejected by the stability check: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
