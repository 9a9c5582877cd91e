#include "radfriction/modegrid.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "radfriction/csv.hpp"
#include "radfriction/quadrules.hpp"

namespace radfriction {

std::size_t ModeGrid::antipode_index(std::size_t j) const {
    const std::size_t per_omega = static_cast<std::size_t>(n_theta) * n_phi;
    const std::size_t i_omega = j / per_omega;
    const std::size_t d = j % per_omega;
    const std::size_t i_theta = d / n_phi;
    const std::size_t i_phi = d % n_phi;
    const std::size_t at = static_cast<std::size_t>(n_theta) - 1 - i_theta;
    const std::size_t ap = (i_phi + n_phi / 2) % n_phi;
    return i_omega * per_omega + at * n_phi + ap;
}

ModeGrid build_grid(const FrequencyWindow& window, int n_omega, int n_theta, int n_phi,
                    double c_light) {
    if (!(window.omega_min > 0.0) || !(window.omega_max > window.omega_min))
        throw std::invalid_argument("build_grid: invalid frequency window");
    if (n_omega < 2 || n_theta < 2 || n_phi < 2)
        throw std::invalid_argument("build_grid: all resolution counts must be >= 2");
    if (n_theta % 2 != 0 || n_phi % 2 != 0)
        throw std::invalid_argument("build_grid: n_theta and n_phi must be even (antipodal symmetry)");
    if (!(c_light > 0.0)) throw std::invalid_argument("build_grid: c_light must be positive");

    ModeGrid grid;
    grid.window = window;
    grid.n_omega = n_omega;
    grid.n_theta = n_theta;
    grid.n_phi = n_phi;
    grid.c_light = c_light;
    grid.domega = (window.omega_max - window.omega_min) / n_omega;
    grid.modes.reserve(static_cast<std::size_t>(n_omega) * n_theta * n_phi);

    const QuadRule gl = gauss_legendre(n_theta);
    const double dphi_weight = 2.0 * M_PI / n_phi;

    for (int iw = 0; iw < n_omega; ++iw) {
        const double omega = window.omega_min + (iw + 0.5) * grid.domega;
        const double kmag = omega / c_light;
        for (int it = 0; it < n_theta; ++it) {
            const double ct = gl.nodes[it];
            const double st = std::sqrt(1.0 - ct * ct);
            for (int ip = 0; ip < n_phi; ++ip) {
                // Offset phi grid so antipodes (+pi) land on grid points for even n_phi.
                const double phi = 2.0 * M_PI * (ip + 0.5) / n_phi;
                Mode m;
                const Vec3 khat{st * std::cos(phi), st * std::sin(phi), ct};
                m.k = kmag * khat;
                m.omega = omega;
                m.weight = grid.domega * gl.weights[it] * dphi_weight;
                // Deterministic polarization basis avoiding the axis singularity.
                const Vec3 a = (std::abs(khat.z) > 0.9) ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 0.0, 1.0};
                m.pol1 = normalized(cross(khat, a));
                m.pol2 = cross(khat, m.pol1);
                grid.modes.push_back(m);
            }
        }
    }
    return grid;
}

CoupledGrid couple_dipole(const ModeGrid& grid, const AtomParams& atom,
                          const std::optional<Vec3>& orientation) {
    require_valid(atom);
    if (orientation && std::abs(norm(*orientation) - 1.0) > 1e-9)
        throw std::invalid_argument("couple_dipole: orientation must be a unit vector");

    CoupledGrid coupled;
    coupled.grid = &grid;
    coupled.atom = atom;
    coupled.entries.reserve(2 * grid.size());

    const double mu2 = atom.dipole_mag * atom.dipole_mag;
    const double w0 = atom.omega0;
    const double c3 = atom.c_light * atom.c_light * atom.c_light;
    // |g_eff|^2 = (2 pi hbar w0^2 / w) |mu.eps|^2 x w^2/((2 pi)^3 c^3) x weight
    const double pref = atom.hbar * w0 * w0 / (4.0 * M_PI * M_PI * c3);

    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Mode& m = grid.modes[j];
        for (int p = 0; p < 2; ++p) {
            const Vec3& eps = (p == 0) ? m.pol1 : m.pol2;
            double mu_eps2;
            if (orientation) {
                const double proj = dot(*orientation, eps);
                mu_eps2 = mu2 * proj * proj;
            } else {
                mu_eps2 = mu2 / 3.0;
            }
            const double g2 = pref * m.omega * mu_eps2 * m.weight;
            // The mode amplitude carries an overall factor i.
            coupled.entries.push_back({j, p, std::complex<double>(0.0, std::sqrt(g2))});
        }
    }
    return coupled;
}

double golden_rule_rate(const CoupledGrid& coupled) {
    const ModeGrid& grid = *coupled.grid;
    const double w0 = coupled.atom.omega0;
    if (w0 <= grid.window.omega_min || w0 >= grid.window.omega_max)
        throw std::invalid_argument("golden_rule_rate: omega0 outside the grid window");
    const double h = grid.domega;
    KahanSum sum;
    for (const auto& e : coupled.entries) {
        const double d = std::abs(grid.modes[e.mode_index].omega - w0);
        if (d >= h) continue;
        const double kernel = (1.0 - d / h) / h;
        sum.add(std::norm(e.g_eff) * kernel);
    }
    const double hbar = coupled.atom.hbar;
    return 2.0 * M_PI / (hbar * hbar) * sum.sum;
}

void write_grid_csv(const CoupledGrid& coupled, const std::string& path) {
    CsvWriter csv(path, {"kx", "ky", "kz", "omega", "weight", "g_eff_sq"});
    for (const auto& e : coupled.entries) {
        const Mode& m = coupled.grid->modes[e.mode_index];
        csv.row({m.k.x, m.k.y, m.k.z, m.omega, m.weight, std::norm(e.g_eff)});
    }
}

} // namespace radfriction
