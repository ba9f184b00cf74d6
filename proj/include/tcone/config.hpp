#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcone/cone_oracle.hpp"
#include "tcone/scenarios.hpp"
#include "tcone/solvers.hpp"

namespace tcone {

enum class RunMode { Solve, Oracle, Compare, Convergence, Bench, Coeffs, Identities };

std::string to_string(RunMode mode);
/// Throws ConfigError for an unknown name.
RunMode parse_mode(const std::string& name);

/// Sampled input instead of a preset: alpha frames in the grid snapshot
/// format (stamps are the time knots) and rho as a `t,rho` CSV.
struct DataInput {
    std::filesystem::path rate;
    std::filesystem::path speed;
};

/// Where the compare and oracle modes evaluate. Either explicit points or
/// `count` random lattice points at levels drawn from [level_from * N_tau, N_tau].
struct SampleSpec {
    int count = 20;
    std::uint64_t seed = 1;
    double level_from = 0.0;
    std::vector<SamplePoint> points;
};

struct RunConfig {
    RunMode mode = RunMode::Solve;
    ScenarioSpec scenario;
    std::optional<DataInput> data;
    int n_tau = 64;
    double eta = 0.25;
    StartRule start = StartRule::Taylor;
    int n_theta = 64;
    ConeQuadSpec oracle;
    SampleSpec samples;
    /// Output directory; may be overridden on the command line.
    std::filesystem::path out_dir = "out";
    /// Write the 1D CSV export next to the binary snapshots.
    bool csv = true;
    /// Lattice points timed by bench mode to extrapolate the full-lattice oracle cost.
    int bench_points = 64;
    /// Highest order printed and checked by coeffs mode.
    int m_max = 6;
    /// Worker threads; affects speed only and is excluded from the hash.
    int threads = 1;
};

/// Throws ConfigError naming the offending field.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

/// Parses a JSON file; relative data paths resolve against its directory.
RunConfig load_config(const std::filesystem::path& path);

/// FNV-1a 64 of the canonical JSON form (threads and out_dir excluded), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace tcone
