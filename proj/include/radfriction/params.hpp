#ifndef RADFRICTION_PARAMS_HPP
#define RADFRICTION_PARAMS_HPP

#include <string>
#include <vector>

namespace radfriction {

// Two-level atom in natural units (hbar = 1 internally; the field is kept
// explicit so formulas can be written the way they are usually quoted).
struct AtomParams {
    double omega0 = 1.0;       // transition angular frequency
    double mass = 100.0;       // atom mass
    double dipole_mag = 0.0;   // |mu_GE|
    double cutoff_omega = 100.0; // Omega, upper cutoff of the level-shift integral
    double c_light = 1.0;
    double hbar = 1.0;
};

// Dimensionless regime groups.
struct SimScales {
    double gamma_ratio = 0.0;  // Gamma0 / omega0
    double recoil_param = 0.0; // hbar*omega0 / (m c^2)
    double beta = 0.0;         // <p0> / (m c)
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

// Gamma0 = 4 |mu|^2 omega0^3 / (3 hbar c^3), the free-space decay rate of a
// stationary atom.
double derive_gamma0(const AtomParams& atom);

// Inverse of derive_gamma0: dipole magnitude that reproduces a given rate.
double dipole_from_gamma0(const AtomParams& atom, double gamma0);

SimScales dimensionless_groups(const AtomParams& atom, double mean_p);

// Hard invariants become errors, exceeded regime thresholds become warnings.
ValidationReport validate_params(const AtomParams& atom, const SimScales& scales,
                                 double regime_threshold = 0.05);

// Throws std::invalid_argument when validate_params reports a hard error.
void require_valid(const AtomParams& atom);

} // namespace radfriction

#endif
