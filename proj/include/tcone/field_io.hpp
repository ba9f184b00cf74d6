#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "tcone/field_core.hpp"

namespace tcone {

/// Parsed header of a grid snapshot file.
struct FieldHeader {
    int dim = 1;
    std::array<int, 3> counts{1, 1, 1};
    double dtau = 0.0;
    std::size_t levels = 0;
    /// Every key=value token, including the ones above.
    std::map<std::string, std::string> tokens;
};

/// Writes `TCONE1 dim=<d> n=<N1,...> dtau=<..> levels=<..> endian=little fp=64`
/// followed by ds, label and stamps tokens (hex floats, so the round trip is
/// exact) and any `extra` tokens, a newline, then the raw little-endian
/// doubles, level-major and row-major within a level.
void write_field(const FieldSeries& series, const std::filesystem::path& path,
                 const std::map<std::string, std::string>& extra = {});

/// Reads a snapshot; unknown header keys are kept in `header` but ignored.
/// Throws MalformedHeaderError, ShapeMismatchError (dims and counts disagree,
/// or the payload is too long) or TruncatedPayloadError (payload too short).
FieldSeries read_field(const std::filesystem::path& path, FieldHeader* header = nullptr);

/// 1D series as CSV with columns level,t,x,value (t is the level stamp),
/// preceded by a `# comment` line when `comment` is not empty.
/// Throws GridMismatchError for other dimensions.
void write_csv_1d(const FieldSeries& series, const std::filesystem::path& path, const std::string& comment = "");

/// Speed samples as CSV rows `t,rho`; a non-numeric first row is a header
/// and lines starting with `#` are comments.
SampledSpeed read_speed_csv(const std::filesystem::path& path);
void write_speed_csv(const SampledSpeed& speed, const std::filesystem::path& path, const std::string& comment = "");

/// Shortest exact text form of a double (hex float).
std::string hex_double(double v);

}  // namespace tcone
