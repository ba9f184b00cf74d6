#include "tcone/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "tcone/errors.hpp"

namespace tcone {

namespace {

constexpr const char* kMagic = "TCONE1";

std::uint64_t to_little(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        std::uint64_t r = 0;
        for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
        return r;
    }
}

double parse_double(const std::string& s, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw MalformedHeaderError("header key " + key + " has a non-numeric value \"" + s + "\"");
    }
    return v;
}

long parse_int(const std::string& s, const std::string& key) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw MalformedHeaderError("header key " + key + " has a non-integer value \"" + s + "\"");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

Quantity parse_quantity(const std::string& s) {
    for (Quantity q : {Quantity::U0, Quantity::U1, Quantity::u, Quantity::F}) {
        if (to_string(q) == s) return q;
    }
    throw MalformedHeaderError("unknown label \"" + s + "\"");
}

const std::string& require(const std::map<std::string, std::string>& tokens, const std::string& key) {
    auto it = tokens.find(key);
    if (it == tokens.end()) throw MalformedHeaderError("header lacks the key " + key);
    return it->second;
}

}  // namespace

std::string hex_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

void write_field(const FieldSeries& series, const std::filesystem::path& path,
                 const std::map<std::string, std::string>& extra) {
    series.validate();
    const GridSpec& g = series.grid;
    std::ostringstream hdr;
    hdr << kMagic << " dim=" << g.dim() << " n=";
    for (int a = 0; a < g.dim(); ++a) hdr << (a ? "," : "") << g.count(a);
    const double dtau = series.n_levels() > 1 ? series.stamps[1] - series.stamps[0] : 0.0;
    hdr << " dtau=" << hex_double(dtau) << " levels=" << series.n_levels() << " endian=little fp=64";
    hdr << " ds=" << hex_double(g.step()) << " label=" << to_string(series.label) << " stamps=";
    for (std::size_t n = 0; n < series.stamps.size(); ++n) hdr << (n ? "," : "") << hex_double(series.stamps[n]);
    for (const auto& [k, v] : extra) {
        if (k.empty() || k.find_first_of(" =\n") != std::string::npos || v.find_first_of(" \n") != std::string::npos) {
            throw ArgumentError("header token \"" + k + "\" must not contain spaces, '=' or newlines");
        }
        hdr << " " << k << "=" << v;
    }
    hdr << "\n";

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    const std::string h = hdr.str();
    out.write(h.data(), static_cast<std::streamsize>(h.size()));
    std::vector<std::uint64_t> buf(g.size());
    for (const auto& lvl : series.levels) {
        for (std::size_t i = 0; i < lvl.size(); ++i) buf[i] = to_little(std::bit_cast<std::uint64_t>(lvl[i]));
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * 8));
    }
    if (!out) throw IoError("write to " + path.string() + " failed");
}

FieldSeries read_field(const std::filesystem::path& path, FieldHeader* header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw MalformedHeaderError("empty file " + path.string());

    std::istringstream ls(line);
    std::string magic;
    ls >> magic;
    if (magic != kMagic) throw MalformedHeaderError("missing " + std::string(kMagic) + " magic");
    FieldHeader h;
    std::string tok;
    while (ls >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw MalformedHeaderError("bad header token \"" + tok + "\"");
        h.tokens[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    if (require(h.tokens, "endian") != "little") throw MalformedHeaderError("only endian=little is supported");
    if (require(h.tokens, "fp") != "64") throw MalformedHeaderError("only fp=64 is supported");
    const long dim = parse_int(require(h.tokens, "dim"), "dim");
    if (dim < 1 || dim > 3) throw MalformedHeaderError("dim must be 1, 2 or 3");
    h.dim = static_cast<int>(dim);
    const auto parts = split(require(h.tokens, "n"), ',');
    if (parts.size() != static_cast<std::size_t>(dim)) {
        throw ShapeMismatchError("header declares dim=" + std::to_string(dim) + " but " +
                                 std::to_string(parts.size()) + " axis counts");
    }
    for (std::size_t a = 0; a < parts.size(); ++a) {
        const long n = parse_int(parts[a], "n");
        if (n < 3) throw MalformedHeaderError("axis counts must be >= 3");
        h.counts[a] = static_cast<int>(n);
    }
    h.dtau = parse_double(require(h.tokens, "dtau"), "dtau");
    const long levels = parse_int(require(h.tokens, "levels"), "levels");
    if (levels < 0) throw MalformedHeaderError("levels must be nonnegative");
    h.levels = static_cast<std::size_t>(levels);

    double ds = 1.0;
    if (auto it = h.tokens.find("ds"); it != h.tokens.end()) ds = parse_double(it->second, "ds");
    Quantity label = Quantity::U0;
    if (auto it = h.tokens.find("label"); it != h.tokens.end()) label = parse_quantity(it->second);

    FieldSeries s(GridSpec(h.dim, h.counts, ds), label, h.levels);
    if (auto it = h.tokens.find("stamps"); it != h.tokens.end()) {
        const auto st = split(it->second, ',');
        if (st.size() != h.levels) throw MalformedHeaderError("stamps count differs from levels");
        for (std::size_t n = 0; n < st.size(); ++n) s.stamps[n] = parse_double(st[n], "stamps");
    } else {
        for (std::size_t n = 0; n < h.levels; ++n) s.stamps[n] = static_cast<double>(n) * h.dtau;
    }

    const std::size_t expected = s.grid.size() * h.levels * 8;
    const std::streampos start = in.tellg();
    in.seekg(0, std::ios::end);
    const auto available = static_cast<std::size_t>(in.tellg() - start);
    in.seekg(start);
    if (available < expected) {
        throw TruncatedPayloadError("payload holds " + std::to_string(available) + " bytes, header needs " +
                                    std::to_string(expected));
    }
    if (available > expected) {
        throw ShapeMismatchError("payload holds " + std::to_string(available) + " bytes, header declares " +
                                 std::to_string(expected));
    }
    std::vector<std::uint64_t> buf(s.grid.size());
    for (auto& lvl : s.levels) {
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * 8));
        if (!in) throw TruncatedPayloadError("payload ended early");
        for (std::size_t i = 0; i < lvl.size(); ++i) lvl[i] = std::bit_cast<double>(to_little(buf[i]));
    }
    if (header) *header = h;
    return s;
}

void write_csv_1d(const FieldSeries& series, const std::filesystem::path& path, const std::string& comment) {
    if (series.grid.dim() != 1) throw GridMismatchError("CSV export is for 1D series only");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "level,t,x,value\n";
    char buf[160];
    for (std::size_t n = 0; n < series.n_levels(); ++n) {
        for (std::size_t i = 0; i < series.grid.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", n, series.stamps[n],
                          series.grid.coords(i)[0], series.levels[n][i]);
            out << buf;
        }
    }
}

SampledSpeed read_speed_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<double> t;
    std::vector<double> rho;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        const auto cols = split(line, ',');
        char* e1 = nullptr;
        char* e2 = nullptr;
        const double a = cols.size() == 2 ? std::strtod(cols[0].c_str(), &e1) : 0.0;
        const double b = cols.size() == 2 ? std::strtod(cols[1].c_str(), &e2) : 0.0;
        const bool numeric = cols.size() == 2 && e1 != cols[0].c_str() && e2 != cols[1].c_str();
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            throw ConfigError("speed CSV row \"" + line + "\" is not `t,rho`");
        }
        first = false;
        t.push_back(a);
        rho.push_back(b);
    }
    return SampledSpeed(std::move(t), std::move(rho));
}

void write_speed_csv(const SampledSpeed& speed, const std::filesystem::path& path, const std::string& comment) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "t,rho\n";
    char buf[96];
    for (std::size_t n = 0; n < speed.knots().size(); ++n) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", speed.knots()[n], speed.values()[n]);
        out << buf;
    }
}

}  // namespace tcone
