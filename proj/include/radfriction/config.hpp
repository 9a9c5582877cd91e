#ifndef RADFRICTION_CONFIG_HPP
#define RADFRICTION_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "radfriction/analytic.hpp"
#include "radfriction/experiments.hpp"
#include "radfriction/params.hpp"

namespace radfriction {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridConfig {
    bool auto_window = true;
    double omega_min = 0.0; // used when auto_window is false
    double omega_max = 0.0;
    int n_omega = 400;
    int n_theta = 16;
    int n_phi = 16;
};

struct PackConfig {
    double beta = 0.01;
    double rel_width = 0.1; // sigma / mean momentum
    int n_samples = 7;
};

struct RunBlock {
    double t_final = 5.0;     // units of 1/Gamma0
    double out_stride = 0.05; // units of 1/Gamma0
    double t_star = 1.0;      // sweep readout time, units of 1/Gamma0
    ShiftMode shift_mode = ShiftMode::zero_shift;
    std::vector<double> betas = {0.002, 0.005, 0.008, 0.01};
    std::vector<GridResolution> ladder = {{100, 8, 8}, {200, 12, 12}, {400, 16, 16}};
    std::string metric = "rate_error"; // converge metric: rate_error | force_error
};

struct RunConfig {
    AtomParams atom; // dipole_mag materialized (possibly from gamma0)
    GridConfig grid;
    PackConfig pack;
    RunBlock run;

    double gamma0() const;
    // Materialized frequency window; the auto window covers the emission line
    // plus its Doppler sweep.
    FrequencyWindow window() const;
};

// Parses a "section.key = value" document.  Unknown keys, missing required
// keys, and type mismatches raise ConfigError with the key path.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

// Canonical emission of the materialized config; re-parsing yields an
// equivalent config.
std::string emit_config(const RunConfig& config);

} // namespace radfriction

#endif
