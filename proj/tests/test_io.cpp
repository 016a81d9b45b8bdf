#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "sgf/config.hpp"
#include "sgf/errors.hpp"
#include "sgf/snapshot.hpp"

using namespace sgf;

namespace {

ScalarField sample(const GridPtr& g)
{
    return ScalarField::from_function(g, [](double r, double t) { return std::sin(3.1 * r) * std::cos(t) / 7.0; });
}

const char* kMinimal = R"({"model": "second_grade", "alpha": 0.2, "nu": 0.001, "grid": {"n_r": 64}, "t_final": 1})";

std::string key_of(const std::string& text, bool strict = true)
{
    try {
        parse_config(text, strict);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<none>";
}

}  // namespace

TEST_SUITE("snapshot")
{
    TEST_CASE("csv and binary round trips are exact")
    {
        const GridPtr g = build_grid({12, 8, 5.0});
        const ScalarField f = sample(g);
        for (SnapshotFormat fmt : {SnapshotFormat::csv, SnapshotFormat::binary}) {
            std::stringstream io;
            write_snapshot(io, f, 0.25, 0.1, 1e-3, fmt);
            const Snapshot s = read_snapshot(io);
            CHECK(s.header.n_r == 12);
            CHECK(s.header.n_theta == 8);
            CHECK(s.header.r_max == 5.0);
            CHECK(s.header.time == 0.25);
            CHECK(s.header.alpha == 0.1);
            CHECK(s.header.nu == 1e-3);
            CHECK(s.values == f.values());
            CHECK(to_field(s, g).values() == f.values());
        }
    }

    TEST_CASE("files")
    {
        const GridPtr g = build_grid({10, 8, 4.0});
        const auto path = std::filesystem::temp_directory_path() / "sgf_unit_snapshot.bin";
        write_snapshot(path, sample(g), 1.0, 0.2, 0.0, SnapshotFormat::binary);
        CHECK(read_snapshot(path).values == sample(g).values());
        std::filesystem::remove(path);
        CHECK_THROWS(read_snapshot(path));
    }

    TEST_CASE("malformed input is rejected")
    {
        std::stringstream truncated("n_r,n_theta,r_max,time,alpha,nu\n4,8,4,0,0,0\n1,2,3\n");
        CHECK_THROWS_AS(read_snapshot(truncated), DomainError);
        std::stringstream junk("SGF1xx");
        CHECK_THROWS_AS(read_snapshot(junk), DomainError);
    }

    TEST_CASE("snapshots on another grid are refused")
    {
        const GridPtr g = build_grid({10, 8, 4.0});
        std::stringstream io;
        write_snapshot(io, sample(g), 0.0, 0.0, 0.0, SnapshotFormat::csv);
        CHECK_THROWS(to_field(read_snapshot(io), build_grid({12, 8, 4.0})));
    }

    TEST_CASE("format names")
    {
        CHECK(parse_snapshot_format("binary") == SnapshotFormat::binary);
        CHECK(std::string(to_string(SnapshotFormat::csv)) == "csv");
        CHECK_THROWS(parse_snapshot_format("hdf5"));
    }
}

TEST_SUITE("config")
{
    TEST_CASE("a minimal config fills defaults")
    {
        const RunConfig c = parse_config(kMinimal);
        CHECK(c.model == ModelParams{ModelKind::second_grade, 0.2, 0.001});
        CHECK(c.grid == GridSpec{64, 128, 8.0});
        CHECK(c.t_final == 1.0);
        CHECK(c.run.cfl == 0.5);
        CHECK(c.initial == InitialCase{});
        CHECK(c.output.dir == "out");
    }

    TEST_CASE("full dumps round trip")
    {
        RunConfig c = parse_config(kMinimal);
        c.initial.name = CaseName::perturbed_vortex;
        c.initial.profile = BoundaryProfile::slip;
        c.sweep.alphas = {0.3, 0.15};
        c.verify.chain_tol = 1e-7;
        c.output.snapshot_format = SnapshotFormat::binary;
        const RunConfig back = parse_config(to_json(c));
        CHECK(equivalent(c, back));
        CHECK(to_json(back) == to_json(c));
    }

    TEST_CASE("errors name the offending key")
    {
        CHECK(key_of(R"({"alpha": 0.2, "grid": {"n_r": 64}, "t_final": 1})") == "model");
        CHECK(key_of(R"({"model": "euler_alpha", "alpha": 0.2, "grid": {}, "t_final": 1})") == "grid.n_r");
        CHECK(key_of(R"({"model": "euler_alpha", "alpha": "x", "grid": {"n_r": 64}, "t_final": 1})") == "alpha");
        CHECK(key_of(R"({"model": "euler_alpha", "alpha": 0.2, "grid": {"n_r": 64}, "t_final": 1,
                          "time": {"cfl": 2}})") == "time.cfl");
        CHECK(key_of(R"({"model": "euler_alpha", "alpha": 0.2, "grid": {"n_r": 64}, "t_final": 1,
                          "case": {"colour": 1}})") == "case.colour");
        CHECK(key_of("{not json") != "<none>");
    }

    TEST_CASE("lenient mode reports unknown keys instead")
    {
        std::vector<std::string> warnings;
        const std::string text =
            R"({"model": "euler_alpha", "alpha": 0.2, "grid": {"n_r": 64}, "t_final": 1, "extra": true})";
        CHECK(key_of(text, true) == "extra");
        CHECK_NOTHROW(parse_config(text, false, &warnings));
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("extra") != std::string::npos);
    }

    TEST_CASE("model consistency is checked")
    {
        CHECK(key_of(R"({"model": "euler_alpha", "alpha": 0.2, "nu": 0.1, "grid": {"n_r": 64}, "t_final": 1})") !=
              "<none>");
        CHECK(key_of(R"({"model": "second_grade", "alpha": -0.1, "nu": 0.1, "grid": {"n_r": 64}, "t_final": 1})") !=
              "<none>");
    }

    TEST_CASE("sweep section maps to a sweep config")
    {
        const RunConfig c = parse_config(
            R"({"model": "euler_alpha", "alpha": 0.2, "grid": {"n_r": 64, "r_max": 12}, "t_final": 0.5,
                "sweep": {"alphas": [0.4, 0.2], "nu_c": 1, "nu_gamma": 2, "threads": 2}})");
        const SweepConfig s = c.sweep_config();
        CHECK(s.alphas == std::vector<double>{0.4, 0.2});
        CHECK(s.nu_law(0.2) == doctest::Approx(0.04));
        CHECK(s.grid.r_max == 12.0);
        CHECK(s.t_final == 0.5);
        CHECK(s.threads == 2);
    }
}
