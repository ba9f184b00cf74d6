#include "tcone/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "tcone/errors.hpp"

namespace tcone {

using nlohmann::json;

namespace {

const std::pair<RunMode, const char*> kModes[] = {
    {RunMode::Solve, "solve"},           {RunMode::Oracle, "oracle"}, {RunMode::Compare, "compare"},
    {RunMode::Convergence, "convergence"}, {RunMode::Bench, "bench"},   {RunMode::Coeffs, "coeffs"},
    {RunMode::Identities, "identities"},
};

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!known.count(key)) throw ConfigError("unknown config field " + where + "." + key);
    }
}

template <typename T>
void read(const json& obj, const char* key, const std::string& where, T& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config field " + where + "." + key + " has the wrong type");
    }
}

void positive(int v, const std::string& field, int min = 1) {
    if (v < min) throw ConfigError("config field " + field + " must be >= " + std::to_string(min));
}

}  // namespace

std::string to_string(RunMode mode) {
    for (const auto& [m, name] : kModes) {
        if (m == mode) return name;
    }
    return "?";
}

RunMode parse_mode(const std::string& name) {
    for (const auto& [m, n] : kModes) {
        if (name == n) return m;
    }
    throw ConfigError("config field mode: unknown mode \"" + name + "\"");
}

RunConfig config_from_json(const json& j) {
    reject_unknown(j, "config",
                   {"mode", "scenario", "data", "n_tau", "scheme", "n_theta", "oracle", "samples", "output",
                    "bench", "coeffs", "threads", "provenance"});
    RunConfig c;
    std::string mode = "solve";
    read(j, "mode", "config", mode);
    c.mode = parse_mode(mode);

    if (auto it = j.find("scenario"); it != j.end()) {
        reject_unknown(*it, "scenario", {"name", "n", "n_t", "seed", "alpha0", "rho0", "dim", "horizon"});
        read(*it, "name", "scenario", c.scenario.name);
        read(*it, "n", "scenario", c.scenario.n);
        read(*it, "n_t", "scenario", c.scenario.n_t);
        read(*it, "seed", "scenario", c.scenario.seed);
        read(*it, "alpha0", "scenario", c.scenario.alpha0);
        read(*it, "rho0", "scenario", c.scenario.rho0);
        read(*it, "dim", "scenario", c.scenario.dim);
        read(*it, "horizon", "scenario", c.scenario.horizon);
        const auto& names = scenario_names();
        if (std::find(names.begin(), names.end(), c.scenario.name) == names.end()) {
            throw ConfigError("config field scenario.name: unknown scenario \"" + c.scenario.name + "\"");
        }
        if (c.scenario.dim < 1 || c.scenario.dim > 3) throw ConfigError("config field scenario.dim must be 1, 2 or 3");
        if (!(c.scenario.alpha0 >= 0.0)) throw ConfigError("config field scenario.alpha0 must be >= 0");
        if (!(c.scenario.rho0 > 0.0)) throw ConfigError("config field scenario.rho0 must be > 0");
        if (!(c.scenario.horizon >= 0.0)) throw ConfigError("config field scenario.horizon must be >= 0");
        if (c.scenario.n != 0) positive(c.scenario.n, "scenario.n", 3);
        if (c.scenario.n_t != 0) positive(c.scenario.n_t, "scenario.n_t");
    }
    if (auto it = j.find("data"); it != j.end()) {
        reject_unknown(*it, "data", {"rate", "speed"});
        DataInput d;
        std::string rate;
        std::string speed;
        read(*it, "rate", "data", rate);
        read(*it, "speed", "data", speed);
        if (rate.empty()) throw ConfigError("config field data.rate is required");
        if (speed.empty()) throw ConfigError("config field data.speed is required");
        d.rate = rate;
        d.speed = speed;
        c.data = d;
    }
    read(j, "n_tau", "config", c.n_tau);
    positive(c.n_tau, "n_tau", 2);
    if (auto it = j.find("scheme"); it != j.end()) {
        reject_unknown(*it, "scheme", {"eta", "start_rule"});
        read(*it, "eta", "scheme", c.eta);
        std::string start = to_string(c.start);
        read(*it, "start_rule", "scheme", start);
        try {
            c.start = parse_start_rule(start);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("config field scheme.start_rule: ") + e.what());
        }
        if (!(c.eta >= 0.0 && c.eta <= 0.5)) throw ConfigError("config field scheme.eta must lie in [0, 1/2]");
    }
    read(j, "n_theta", "config", c.n_theta);
    positive(c.n_theta, "n_theta", 4);
    if (auto it = j.find("oracle"); it != j.end()) {
        reject_unknown(*it, "oracle", {"n_s", "n_r", "n_ang"});
        read(*it, "n_s", "oracle", c.oracle.n_s);
        read(*it, "n_r", "oracle", c.oracle.n_r);
        read(*it, "n_ang", "oracle", c.oracle.n_ang);
        positive(c.oracle.n_s, "oracle.n_s", 2);
        positive(c.oracle.n_r, "oracle.n_r", 2);
        positive(c.oracle.n_ang, "oracle.n_ang", 2);
    }
    if (auto it = j.find("samples"); it != j.end()) {
        reject_unknown(*it, "samples", {"count", "seed", "level_from", "points"});
        read(*it, "count", "samples", c.samples.count);
        read(*it, "seed", "samples", c.samples.seed);
        read(*it, "level_from", "samples", c.samples.level_from);
        positive(c.samples.count, "samples.count");
        if (!(c.samples.level_from >= 0.0 && c.samples.level_from <= 1.0)) {
            throw ConfigError("config field samples.level_from must lie in [0, 1]");
        }
        if (auto pts = it->find("points"); pts != it->end()) {
            if (!pts->is_array()) throw ConfigError("config field samples.points must be an array");
            for (const auto& p : *pts) {
                reject_unknown(p, "samples.points[]", {"x", "t"});
                SamplePoint sp;
                std::vector<double> x;
                read(p, "x", "samples.points[]", x);
                read(p, "t", "samples.points[]", sp.t);
                if (x.empty() || x.size() > 3) throw ConfigError("config field samples.points[].x needs 1 to 3 coordinates");
                for (std::size_t a = 0; a < x.size(); ++a) sp.x[a] = x[a];
                c.samples.points.push_back(sp);
            }
        }
    }
    if (auto it = j.find("output"); it != j.end()) {
        reject_unknown(*it, "output", {"dir", "csv"});
        std::string dir = c.out_dir.string();
        read(*it, "dir", "output", dir);
        c.out_dir = dir;
        read(*it, "csv", "output", c.csv);
    }
    if (auto it = j.find("bench"); it != j.end()) {
        reject_unknown(*it, "bench", {"oracle_points"});
        read(*it, "oracle_points", "bench", c.bench_points);
        positive(c.bench_points, "bench.oracle_points");
    }
    if (auto it = j.find("coeffs"); it != j.end()) {
        reject_unknown(*it, "coeffs", {"m_max"});
        read(*it, "m_max", "coeffs", c.m_max);
        positive(c.m_max, "coeffs.m_max");
    }
    read(j, "threads", "config", c.threads);
    positive(c.threads, "threads");
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["mode"] = to_string(c.mode);
    j["scenario"] = {{"name", c.scenario.name}, {"n", c.scenario.n},         {"n_t", c.scenario.n_t},
                     {"seed", c.scenario.seed}, {"alpha0", c.scenario.alpha0}, {"rho0", c.scenario.rho0},
                     {"dim", c.scenario.dim},   {"horizon", c.scenario.horizon}};
    if (c.data) j["data"] = {{"rate", c.data->rate.string()}, {"speed", c.data->speed.string()}};
    j["n_tau"] = c.n_tau;
    j["scheme"] = {{"eta", c.eta}, {"start_rule", to_string(c.start)}};
    j["n_theta"] = c.n_theta;
    j["oracle"] = {{"n_s", c.oracle.n_s}, {"n_r", c.oracle.n_r}, {"n_ang", c.oracle.n_ang}};
    json pts = json::array();
    for (const auto& p : c.samples.points) pts.push_back({{"x", {p.x[0], p.x[1], p.x[2]}}, {"t", p.t}});
    j["samples"] = {{"count", c.samples.count}, {"seed", c.samples.seed}, {"level_from", c.samples.level_from},
                    {"points", pts}};
    j["output"] = {{"dir", c.out_dir.string()}, {"csv", c.csv}};
    j["bench"] = {{"oracle_points", c.bench_points}};
    j["coeffs"] = {{"m_max", c.m_max}};
    j["threads"] = c.threads;
    return j;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    RunConfig c = config_from_json(j);
    if (c.data) {
        const auto base = path.parent_path();
        if (c.data->rate.is_relative()) c.data->rate = base / c.data->rate;
        if (c.data->speed.is_relative()) c.data->speed = base / c.data->speed;
    }
    return c;
}

std::string config_hash(const RunConfig& cfg) {
    json j = config_to_json(cfg);
    j.erase("threads");
    j["output"].erase("dir");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace tcone
