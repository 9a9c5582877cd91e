#include "radfriction/params.hpp"

#include <cmath>
#include <stdexcept>

namespace radfriction {

double derive_gamma0(const AtomParams& atom) {
    require_valid(atom);
    const double mu2 = atom.dipole_mag * atom.dipole_mag;
    const double w0 = atom.omega0;
    const double c = atom.c_light;
    return 4.0 * mu2 * w0 * w0 * w0 / (3.0 * atom.hbar * c * c * c);
}

double dipole_from_gamma0(const AtomParams& atom, double gamma0) {
    if (gamma0 < 0.0) throw std::invalid_argument("dipole_from_gamma0: gamma0 < 0");
    const double w0 = atom.omega0;
    const double c = atom.c_light;
    return std::sqrt(3.0 * atom.hbar * c * c * c * gamma0 / (4.0 * w0 * w0 * w0));
}

SimScales dimensionless_groups(const AtomParams& atom, double mean_p) {
    require_valid(atom);
    SimScales s;
    s.gamma_ratio = derive_gamma0(atom) / atom.omega0;
    s.recoil_param = atom.hbar * atom.omega0 / (atom.mass * atom.c_light * atom.c_light);
    s.beta = std::abs(mean_p) / (atom.mass * atom.c_light);
    return s;
}

ValidationReport validate_params(const AtomParams& atom, const SimScales& scales,
                                 double regime_threshold) {
    ValidationReport rep;
    if (!(atom.omega0 > 0.0)) rep.errors.push_back("omega0 must be positive");
    if (!(atom.mass > 0.0)) rep.errors.push_back("mass must be positive");
    if (!(atom.dipole_mag >= 0.0)) rep.errors.push_back("dipole_mag must be non-negative");
    if (!(atom.c_light > 0.0)) rep.errors.push_back("c_light must be positive");
    if (!(atom.hbar > 0.0)) rep.errors.push_back("hbar must be positive");
    if (!(atom.cutoff_omega > atom.omega0))
        rep.errors.push_back("cutoff below transition frequency (level-shift log undefined)");

    if (!(scales.gamma_ratio >= 0.0) || !(scales.recoil_param >= 0.0) || !(scales.beta >= 0.0))
        rep.errors.push_back("dimensionless groups must be non-negative");
    if (scales.gamma_ratio > regime_threshold)
        rep.warnings.push_back("gamma_ratio exceeds weak-coupling threshold");
    if (scales.recoil_param > regime_threshold)
        rep.warnings.push_back("recoil_param exceeds nonrelativistic threshold");
    if (scales.beta > regime_threshold)
        rep.warnings.push_back("beta exceeds nonrelativistic threshold");
    return rep;
}

void require_valid(const AtomParams& atom) {
    if (!(atom.omega0 > 0.0) || !(atom.mass > 0.0) || !(atom.dipole_mag >= 0.0) ||
        !(atom.c_light > 0.0) || !(atom.hbar > 0.0))
        throw std::invalid_argument("invalid atom parameters");
    if (!(atom.cutoff_omega > atom.omega0))
        throw std::invalid_argument("cutoff below transition frequency");
}

} // namespace radfriction
