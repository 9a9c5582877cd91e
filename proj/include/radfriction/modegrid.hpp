#ifndef RADFRICTION_MODEGRID_HPP
#define RADFRICTION_MODEGRID_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "radfriction/params.hpp"
#include "radfriction/vec3.hpp"

namespace radfriction {

struct Mode {
    Vec3 k;       // wave vector, |k| = omega / c
    double omega; // mode frequency
    Vec3 pol1;    // orthonormal polarization pair, both perpendicular to k
    Vec3 pol2;
    double weight; // quadrature cell measure, d(omega) x d(solid angle)
};

struct FrequencyWindow {
    double omega_min = 0.0;
    double omega_max = 0.0;
};

// Finite continuum-normalized discretization of the vacuum modes:
// uniform midpoint frequencies on the window, Gauss-Legendre nodes in
// cos(theta), uniform phi.  The direction set is exactly antipodal.
struct ModeGrid {
    std::vector<Mode> modes;
    FrequencyWindow window;
    int n_omega = 0;
    int n_theta = 0;
    int n_phi = 0;
    double c_light = 1.0;
    double domega = 0.0; // frequency spacing

    std::size_t size() const { return modes.size(); }
    // Index of the mode with opposite direction at the same frequency.
    std::size_t antipode_index(std::size_t j) const;
};

ModeGrid build_grid(const FrequencyWindow& window, int n_omega, int n_theta, int n_phi,
                    double c_light);

// One polarization component of one grid mode, with the coupling energy
// already continuum-normalized (the quantization volume cancels against the
// mode density) and multiplied by the quadrature weight.
struct CoupledMode {
    std::size_t mode_index = 0;
    int polarization = 0; // 0 or 1
    std::complex<double> g_eff{0.0, 0.0};
};

struct CoupledGrid {
    const ModeGrid* grid = nullptr;
    AtomParams atom;
    std::vector<CoupledMode> entries;

    std::size_t size() const { return entries.size(); }
};

// Dipole orientation: a fixed unit vector, or the isotropic orientation
// average |mu.eps|^2 -> |mu|^2 / 3.
CoupledGrid couple_dipole(const ModeGrid& grid, const AtomParams& atom,
                          const std::optional<Vec3>& orientation);

// Discrete Fermi-golden-rule decay rate: 2 pi / hbar^2 sum |g|^2 K(omega - omega0)
// with a triangular kernel of width one frequency spacing.
double golden_rule_rate(const CoupledGrid& coupled);

// Debug export, one row per coupled entry: kx, ky, kz, omega, weight, |g_eff|^2.
void write_grid_csv(const CoupledGrid& coupled, const std::string& path);

} // namespace radfriction

#endif
