#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end checks of the installed command-line surface: exit codes,
// output files, and flag/config precedence. The binary path comes from
// the build system.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "dgf/csv.hpp"
#include "dgf/harness.hpp"

#ifndef DGF_CLI_PATH
#error "DGF_CLI_PATH must point at the CLI binary"
#endif

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "dgf_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + DGF_CLI_PATH + "\" " + args + " > " +
                            (work_dir() / "stdout.txt").string() + " 2> " +
                            (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("preset happy path writes both artifacts and exits 0") {
    const auto out = work_dir() / "preset_run";
    CHECK(run_cli("preset complete-fig3 --out-dir " + out.string()) == 0);
    CHECK(fs::exists(out / "complete-fig3-trajectory.csv"));
    const auto report = nlohmann::json::parse(slurp(out / "complete-fig3-report.json"));
    CHECK(report.at("converged").get<bool>());
}

TEST_CASE("validation failures exit 2 with a diagnostic") {
    const auto bad = work_dir() / "bad.csv";
    {
        std::ofstream f(bad);
        f << "0.5,0.5\n0.5,0.5\n";
    }
    CHECK(run_cli("simulate --matrix " + bad.string() + " --x0-random --seed 1") == 2);
    CHECK(slurp(work_dir() / "stderr.txt").find("diagonal") != std::string::npos);
}

TEST_CASE("usage errors exit 64") {
    CHECK(run_cli("frobnicate") == 64);
    CHECK(run_cli("preset complete-fig99") == 64);
    CHECK(run_cli("simulate --x0-random --seed 1") == 64);
    CHECK(run_cli("simulate --matrix-preset ring --matrix-preset complete --x0-random") == 64);
    CHECK(run_cli("simulate --matrix-preset ring --x0-preset fig5 --model finite-t") == 64);
}

TEST_CASE("hitting the issue budget exits 3 but still writes outputs") {
    const auto out = work_dir() / "nonconv";
    CHECK(run_cli("simulate --matrix-preset ring --x0-preset fig5 --max-issues 3 --out-dir " +
                  out.string()) == 3);
    CHECK(fs::exists(out / "trajectory.csv"));
    const auto report = nlohmann::json::parse(slurp(out / "report.json"));
    CHECK_FALSE(report.at("converged").get<bool>());
}

TEST_CASE("generate emits a matrix the validator accepts") {
    const auto csv = work_dir() / "gen.csv";
    CHECK(run_cli("generate --n 6 --kind doubly_stochastic --seed 33 --out " + csv.string()) == 0);
    const auto m = dgf::validate_interaction(dgf::read_matrix_csv(csv));
    CHECK(m.doubly_stochastic());
    CHECK(m.size() == 6);
}

TEST_CASE("compare stays within the eigenvector limit for a large T") {
    const auto out = work_dir() / "compare";
    CHECK(run_cli("compare --matrix-preset complete --x0-preset fig3 --t-steps 10000 --out-dir " +
                  out.string()) == 0);
    std::ifstream csv(out / "compare.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "issue,distance");
    std::string line;
    double max_distance = 0.0;
    while (std::getline(csv, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        max_distance = std::max(max_distance, dgf::parse_double(line.substr(comma + 1)));
    }
    CHECK(max_distance <= 1e-6);
}

TEST_CASE("analyze reproduces the simulation report from the exported trajectory") {
    const auto out = work_dir() / "analyze";
    REQUIRE(run_cli("simulate --matrix-preset ring --x0-preset fig6 --out-dir " + out.string()) == 0);
    CHECK(run_cli("analyze --trajectory " + (out / "trajectory.csv").string() +
                  " --matrix-preset ring --out-dir " + (out / "re").string()) == 0);
    const auto direct = nlohmann::json::parse(slurp(out / "report.json"));
    const auto replayed = nlohmann::json::parse(slurp(out / "re" / "report.json"));
    CHECK(direct == replayed);
}

TEST_CASE("analyze --fixed-points emits the candidate list") {
    const auto out = work_dir() / "fp";
    const auto csv = work_dir() / "ring3.csv";
    {
        std::ofstream f(csv);
        f << "0,1,0\n0,0,1\n1,0,0\n";
    }
    const auto sim_out = out / "sim";
    REQUIRE(run_cli("simulate --matrix " + csv.string() + " --x0-random --seed 4 --out-dir " +
                    sim_out.string()) == 0);
    CHECK(run_cli("analyze --trajectory " + (sim_out / "trajectory.csv").string() + " --matrix " +
                  csv.string() + " --fixed-points --out-dir " + out.string()) == 0);
    const auto candidates = nlohmann::json::parse(slurp(out / "candidates.json"));
    CHECK(candidates.size() == 4);
}

TEST_CASE("config file drives simulate and flags override it") {
    const auto out = work_dir() / "config_run";
    fs::create_directories(out);
    const auto config = out / "config.json";
    {
        std::ofstream f(config);
        f << R"({"model": "modified",
                 "matrix": {"preset": "ring"},
                 "x0": {"preset": "fig5"},
                 "max_issues": 10000,
                 "stop_tol": 1e-10,
                 "out_dir": ")" << (out / "results").string() << R"("})";
    }
    CHECK(run_cli("simulate --config " + config.string()) == 0);
    CHECK(fs::exists(out / "results" / "report.json"));
    // The flag wins over the config's issue budget: 3 issues cannot reach
    // the ring's stopping tolerance.
    CHECK(run_cli("simulate --config " + config.string() + " --max-issues 3") == 3);
}
