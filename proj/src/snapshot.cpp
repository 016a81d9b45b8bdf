#include "sgf/snapshot.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "sgf/errors.hpp"

namespace sgf {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'G', 'F', '1'};

static_assert(std::endian::native == std::endian::little, "binary snapshots assume little-endian");

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
void put(std::ostream& out, T v)
{
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in)
{
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw DomainError("snapshot: truncated binary file");
    return v;
}

std::vector<double> split_doubles(const std::string& line)
{
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(cell, &used));
        } catch (const std::exception&) {
            throw DomainError("snapshot: cannot parse number '" + cell + "'");
        }
    }
    return out;
}

Snapshot read_binary(std::istream& in)
{
    Snapshot snap;
    auto& h = snap.header;
    h.n_r = get<std::int32_t>(in);
    h.n_theta = get<std::int32_t>(in);
    h.r_max = get<double>(in);
    h.time = get<double>(in);
    h.alpha = get<double>(in);
    h.nu = get<double>(in);
    if (h.n_r <= 0 || h.n_theta <= 0) throw DomainError("snapshot: bad dimensions");
    snap.values.resize(static_cast<size_t>(h.n_r) * h.n_theta);
    if (!in.read(reinterpret_cast<char*>(snap.values.data()),
                 static_cast<std::streamsize>(snap.values.size() * sizeof(double)))) {
        throw DomainError("snapshot: truncated binary payload");
    }
    return snap;
}

Snapshot read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line.rfind("n_r,n_theta,r_max,time,alpha,nu", 0) != 0) {
        throw DomainError("snapshot: missing CSV header line");
    }
    if (!std::getline(in, line)) throw DomainError("snapshot: missing CSV header values");
    const auto hv = split_doubles(line);
    if (hv.size() != 6) throw DomainError("snapshot: header needs 6 values");
    Snapshot snap;
    auto& h = snap.header;
    h.n_r = static_cast<int>(hv[0]);
    h.n_theta = static_cast<int>(hv[1]);
    h.r_max = hv[2];
    h.time = hv[3];
    h.alpha = hv[4];
    h.nu = hv[5];
    if (h.n_r <= 0 || h.n_theta <= 0) throw DomainError("snapshot: bad dimensions");
    snap.values.reserve(static_cast<size_t>(h.n_r) * h.n_theta);
    for (int i = 0; i < h.n_r; ++i) {
        if (!std::getline(in, line)) throw DomainError("snapshot: expected " + std::to_string(h.n_r) + " rows");
        const auto row = split_doubles(line);
        if (static_cast<int>(row.size()) != h.n_theta) {
            throw DomainError("snapshot: row " + std::to_string(i) + " has " +
                              std::to_string(row.size()) + " values");
        }
        snap.values.insert(snap.values.end(), row.begin(), row.end());
    }
    return snap;
}

}  // namespace

void write_snapshot(std::ostream& out, const ScalarField& f, double time, double alpha, double nu,
                    SnapshotFormat format)
{
    const ExteriorGrid& g = f.grid();
    if (format == SnapshotFormat::binary) {
        out.write(kMagic.data(), kMagic.size());
        put<std::int32_t>(out, g.n_r());
        put<std::int32_t>(out, g.n_theta());
        put(out, g.spec().r_max);
        put(out, time);
        put(out, alpha);
        put(out, nu);
        out.write(reinterpret_cast<const char*>(f.values().data()),
                  static_cast<std::streamsize>(f.values().size() * sizeof(double)));
        return;
    }
    out << "n_r,n_theta,r_max,time,alpha,nu\n";
    out << g.n_r() << ',' << g.n_theta() << ',' << format_double(g.spec().r_max) << ','
        << format_double(time) << ',' << format_double(alpha) << ',' << format_double(nu) << '\n';
    for (int i = 0; i < g.n_r(); ++i) {
        const auto ring = f.ring(i);
        for (int j = 0; j < g.n_theta(); ++j) {
            if (j) out << ',';
            out << format_double(ring[j]);
        }
        out << '\n';
    }
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& f, double time,
                    double alpha, double nu, SnapshotFormat format)
{
    std::ofstream out(path, format == SnapshotFormat::binary ? std::ios::binary : std::ios::out);
    if (!out) throw DomainError("cannot open '" + path.string() + "' for writing");
    write_snapshot(out, f, time, alpha, nu, format);
}

Snapshot read_snapshot(std::istream& in)
{
    std::array<char, 4> head{};
    in.read(head.data(), head.size());
    if (in.gcount() == 4 && head == kMagic) return read_binary(in);
    in.clear();
    in.seekg(0);
    return read_csv(in);
}

Snapshot read_snapshot(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open snapshot '" + path.string() + "'");
    return read_snapshot(in);
}

ScalarField to_field(const Snapshot& snap, const GridPtr& grid)
{
    const auto& h = snap.header;
    if (h.n_r != grid->n_r() || h.n_theta != grid->n_theta() ||
        std::abs(h.r_max - grid->spec().r_max) > 1e-12 * grid->spec().r_max) {
        throw MismatchError("snapshot grid (" + std::to_string(h.n_r) + "x" +
                            std::to_string(h.n_theta) + ") does not match the run grid");
    }
    return ScalarField(grid, snap.values);
}

SnapshotFormat parse_snapshot_format(const std::string& name)
{
    if (name == "csv") return SnapshotFormat::csv;
    if (name == "binary") return SnapshotFormat::binary;
    throw DomainError("unknown snapshot format '" + name + "' (expected csv or binary)");
}

const char* to_string(SnapshotFormat format)
{
    return format == SnapshotFormat::csv ? "csv" : "binary";
}

}  // namespace sgf
