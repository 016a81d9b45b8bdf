#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "sgf/field.hpp"

namespace sgf {

/// Field snapshot file format.
///
/// CSV:    line 1 `n_r,n_theta,r_max,time,alpha,nu`, line 2 the header values,
///         then one row per radial node holding n_theta values.
/// Binary: magic "SGF1", int32 n_r, int32 n_theta, float64 r_max, time, alpha,
///         nu, then n_r * n_theta float64 values ring-major; little-endian.
enum class SnapshotFormat { csv, binary };

struct SnapshotHeader {
    int n_r = 0;
    int n_theta = 0;
    double r_max = 0.0;
    double time = 0.0;
    double alpha = 0.0;
    double nu = 0.0;
};

struct Snapshot {
    SnapshotHeader header;
    std::vector<double> values;
};

void write_snapshot(std::ostream& out, const ScalarField& f, double time, double alpha, double nu,
                    SnapshotFormat format);
void write_snapshot(const std::filesystem::path& path, const ScalarField& f, double time,
                    double alpha, double nu, SnapshotFormat format);

/// Reads either format (binary is detected by its magic). Throws DomainError
/// on malformed input.
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Wraps snapshot values as a field on `grid`; throws MismatchError if the
/// header does not describe the same grid.
ScalarField to_field(const Snapshot& snap, const GridPtr& grid);

SnapshotFormat parse_snapshot_format(const std::string& name);
const char* to_string(SnapshotFormat format);

}  // namespace sgf
