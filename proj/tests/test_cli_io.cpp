#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "radfriction/config.hpp"
#include "radfriction/runner.hpp"

using namespace radfriction;
namespace fs = std::filesystem;

namespace {

std::string minimal = "atom.omega0 = 1\n"
                      "atom.mass = 100\n"
                      "atom.gamma0 = 0.01\n";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("radfriction_test_" + std::to_string(std::rand()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("minimal config parses with documented defaults") {
    const auto cfg = parse_config(minimal);
    CHECK(cfg.atom.omega0 == 1.0);
    CHECK(cfg.atom.mass == 100.0);
    CHECK(cfg.atom.cutoff_omega == 100.0);
    CHECK(cfg.gamma0() == doctest::Approx(0.01).epsilon(1e-13));
    CHECK(cfg.grid.auto_window);
    CHECK(cfg.grid.n_omega == 400);
    CHECK(cfg.grid.n_theta == 16);
    CHECK(cfg.grid.n_phi == 16);
    CHECK(cfg.pack.beta == 0.01);
    CHECK(cfg.pack.n_samples == 7);
    CHECK(cfg.run.shift_mode == ShiftMode::zero_shift);
    CHECK(cfg.run.betas.size() == 4);
    CHECK(cfg.run.ladder.size() == 3);
    // auto window: 40 line widths plus a Doppler guard of 2 omega0 beta_max
    const auto w = cfg.window();
    CHECK(w.omega_min == doctest::Approx(1.0 - 0.42).epsilon(1e-12));
    CHECK(w.omega_max == doctest::Approx(1.0 + 0.42).epsilon(1e-12));
}

TEST_CASE("config errors carry the offending key path") {
    auto message_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };
    CHECK(message_of("atom.mass = 1\natom.gamma0 = 0.01\n").find("atom.omega0") !=
          std::string::npos);
    CHECK(message_of(minimal + "grid.n_omega = banana\n").find("grid.n_omega") !=
          std::string::npos);
    CHECK(message_of(minimal + "grid.n_omega = 1.5\n").find("integer") != std::string::npos);
    CHECK(message_of(minimal + "run.mystery = 1\n").find("run.mystery") != std::string::npos);
    CHECK(message_of(minimal + "atom.mass = 2\n").find("twice") != std::string::npos);
    CHECK(message_of(minimal + "atom.dipole_mag = 0.1\n").find("overdetermined") !=
          std::string::npos);
    CHECK(message_of("atom.omega0 = 1\natom.mass = 100\n").find("atom.dipole_mag") !=
          std::string::npos);
    CHECK(message_of(minimal + "grid.omega_min = 0.5\n").find("explicit") != std::string::npos);
    CHECK(message_of(minimal + "grid.window = sideways\n").find("grid.window") !=
          std::string::npos);
    // physically inconsistent input fails the final validation gate
    CHECK(message_of("atom.omega0 = 1\natom.mass = 100\natom.gamma0 = 0.01\n"
                     "atom.cutoff_omega = 0.5\n")
              .find("cutoff") != std::string::npos);
}

TEST_CASE("explicit window round-trips through the config") {
    const auto cfg = parse_config(minimal + "grid.window = explicit\n"
                                            "grid.omega_min = 0.7\n"
                                            "grid.omega_max = 1.3\n");
    CHECK(!cfg.grid.auto_window);
    CHECK(cfg.window().omega_min == 0.7);
    CHECK(cfg.window().omega_max == 1.3);
}

TEST_CASE("coupling can be given as a rate and round-trips to 1e-12") {
    for (double g : {1e-4, 0.01, 0.02}) {
        const auto cfg = parse_config("atom.omega0 = 1\natom.mass = 100\natom.gamma0 = " +
                                      std::to_string(g) + "\n");
        CHECK(std::abs(cfg.gamma0() - g) <= 1e-12 * g);
    }
}

TEST_CASE("emitted config re-parses to the same canonical form") {
    const auto cfg = parse_config(minimal + "run.shift_mode = with_shift\n"
                                            "run.betas = 0.001, 0.003, 0.006, 0.009\n"
                                            "run.ladder = 50,4,4; 100,8,8; 200,12,12\n"
                                            "pack.n_samples = 5\n");
    const std::string once = emit_config(cfg);
    const std::string twice = emit_config(parse_config(once));
    CHECK(once == twice);
    const auto back = parse_config(once);
    CHECK(back.run.shift_mode == ShiftMode::with_shift);
    CHECK(back.run.betas == cfg.run.betas);
    CHECK(back.pack.n_samples == 5);
}

TEST_CASE("unknown command exits with usage status and writes nothing") {
    TempDir dir;
    const auto cfg = parse_config(minimal);
    CHECK(run_command("frobnicate", cfg, dir.path.string()) == exit_usage);
    CHECK(!fs::exists(dir.path));
}

TEST_CASE("rate command reports the decay rate of the unit-strength atom") {
    TempDir dir;
    const auto cfg = parse_config("atom.omega0 = 1\natom.mass = 1\natom.dipole_mag = 1\n");
    CHECK(run_command("rate", cfg, dir.path.string()) == exit_ok);
    const std::string summary = slurp(dir.path / "summary.txt");
    CHECK(summary.find("gamma0=1.3333333333333333\n") != std::string::npos);
    CHECK(summary.find("result=pass") != std::string::npos);
}

TEST_CASE("shift command reports the emission-line prefactor") {
    TempDir dir;
    const auto cfg = parse_config(minimal + "atom.cutoff_omega = 2\n");
    CHECK(run_command("shift", cfg, dir.path.string()) == exit_ok);
    const std::string summary = slurp(dir.path / "summary.txt");
    // B_r = -Gamma0 hbar / pi at a cutoff of twice the transition frequency
    CHECK(summary.find("b_r=-0.0031830988618379") != std::string::npos);
    CHECK(summary.find("b_i=-0.005") != std::string::npos);
}

TEST_CASE("force-analytic writes the sampled force law") {
    TempDir dir;
    const auto cfg = parse_config(minimal + "run.t_final = 1\nrun.out_stride = 0.5\n");
    CHECK(run_command("force-analytic", cfg, dir.path.string()) == exit_ok);
    const std::string csv = slurp(dir.path / "force.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "t,f_x,f_y,f_z");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4); // header + 3 rows
    const std::string summary = slurp(dir.path / "summary.txt");
    CHECK(summary.find("total_impulse_x=") != std::string::npos);
}

TEST_CASE("simulate output is byte-identical across worker counts") {
    const auto cfg = parse_config(minimal + "grid.n_omega = 20\n"
                                            "grid.n_theta = 4\n"
                                            "grid.n_phi = 4\n"
                                            "pack.n_samples = 5\n"
                                            "run.t_final = 0.5\n"
                                            "run.out_stride = 0.1\n");
    TempDir a, b;
    setenv("RADFRICTION_WORKERS", "1", 1);
    const int code_a = run_command("simulate", cfg, a.path.string());
    setenv("RADFRICTION_WORKERS", "3", 1);
    const int code_b = run_command("simulate", cfg, b.path.string());
    unsetenv("RADFRICTION_WORKERS");
    CHECK(code_a == code_b);
    CHECK(slurp(a.path / "trajectory.csv") == slurp(b.path / "trajectory.csv"));
    CHECK(slurp(a.path / "summary.txt") == slurp(b.path / "summary.txt"));
    // the short run still passes its conservation checks
    const std::string summary = slurp(a.path / "summary.txt");
    CHECK(summary.find("check.norm_conservation=pass") != std::string::npos);
    CHECK(summary.find("check.momentum_conservation=pass") != std::string::npos);
}
