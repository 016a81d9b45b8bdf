#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

fs::path scratch()
{
    const fs::path dir = fs::temp_directory_path() / "sgf_cli_test";
    fs::create_directories(dir);
    return dir;
}

int sgflab(const std::string& args)
{
    const std::string cmd = std::string(SGFLAB_EXE) + " " + args + " > " + (scratch() / "stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const std::string& name, const std::string& text)
{
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("simulate writes diagnostics, snapshots and a summary")
    {
        const fs::path cfg = write_config("sim.json", R"({"model": "second_grade", "alpha": 0.2, "nu": 0.001,
            "grid": {"n_r": 64, "n_theta": 32}, "t_final": 0.1, "time": {"snapshot_interval": 0.05},
            "case": {"name": "perturbed_vortex"}})");
        const fs::path out = scratch() / "sim_out";
        fs::remove_all(out);
        CHECK(sgflab("simulate --config " + cfg.string() + " --output-dir " + out.string()) == 0);
        CHECK(fs::exists(out / "diagnostics.csv"));
        CHECK(fs::exists(out / "summary.json"));
        CHECK(fs::exists(out / "q_0000.csv"));
        CHECK(fs::exists(out / "phi_0002.csv"));
    }

    TEST_CASE("configuration errors exit with 2")
    {
        const fs::path bad = write_config("bad.json", R"({"model": "second_grade"})");
        CHECK(sgflab("simulate --config " + bad.string()) == 2);
        CHECK(sgflab("simulate") == 2);
        CHECK(sgflab("frobnicate") == 2);
        const fs::path unknown = write_config("unknown.json", R"({"model": "euler_alpha", "alpha": 0.2,
            "grid": {"n_r": 64, "n_theta": 16}, "t_final": 0.05, "bogus": 1,
            "output": {"snapshots": false}})");
        CHECK(sgflab("simulate --config " + unknown.string() + " --output-dir " + (scratch() / "u").string()) == 2);
        CHECK(sgflab("simulate --lenient --config " + unknown.string() + " --output-dir " +
                     (scratch() / "u").string()) == 0);
    }

    TEST_CASE("numerical failures exit with 3")
    {
        const fs::path cfg = write_config("tail.json", R"({"model": "euler_alpha", "alpha": 0.2,
            "grid": {"n_r": 64, "n_theta": 16}, "t_final": 0.5, "time": {"tail_tol": 1e-300},
            "output": {"snapshots": false}})");
        CHECK(sgflab("simulate --config " + cfg.string() + " --output-dir " + (scratch() / "t").string()) == 3);
    }

    TEST_CASE("verification failures exit with 4")
    {
        const fs::path cfg = write_config("verify.json", R"({"model": "euler_alpha", "alpha": 0.2,
            "grid": {"n_r": 64, "n_theta": 16}, "t_final": 0.1,
            "verify": {"poisson_n_r": [16, 32, 64], "chain_n_r": 32, "chain_tol": 1e-30, "probe_n_r": 64,
                       "probe_alphas": [0.4, 0.2, 0.1]}})");
        CHECK(sgflab("verify-elliptic --config " + cfg.string() + " --output-dir " + (scratch() / "v").string()) == 4);
        CHECK(fs::exists(scratch() / "v" / "elliptic_report.json"));
    }

    TEST_CASE("sweep overrides and outputs")
    {
        const fs::path cfg = write_config("sweep.json", R"({"model": "euler_alpha", "alpha": 0.2,
            "grid": {"n_r": 64, "n_theta": 16}, "t_final": 0.1})");
        const fs::path out = scratch() / "s";
        CHECK(sgflab("sweep --config " + cfg.string() + " --output-dir " + out.string() +
                     " --alphas 0.4,0.2 --nu-c 0.1 --nu-gamma 2 --threads 2") == 0);
        std::ifstream csv(out / "sweep.csv");
        std::string line;
        int rows = 0;
        while (std::getline(csv, line)) ++rows;
        CHECK(rows == 3);
        CHECK(fs::exists(out / "rates.json"));
        CHECK(sgflab("sweep --config " + cfg.string() + " --output-dir " + out.string() + " --alphas 0.4,x") == 2);
    }
}
