#include "radfriction/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "radfriction/quadrules.hpp"

namespace radfriction {

namespace {

void require_normalized(const MomentumWavepacket& pack) {
    KahanSum sum;
    for (const auto& s : pack.samples()) sum.add(s.weight);
    if (std::abs(sum.sum - 1.0) > 1e-12)
        throw std::invalid_argument("wavepacket is not normalized");
}

double emission_frequency(const AtomParams& atom, ShiftMode mode) {
    const double br = (mode == ShiftMode::with_shift) ? level_shift(atom).b_r : 0.0;
    return atom.omega0 + br / atom.hbar;
}

} // namespace

LevelShift level_shift(const AtomParams& atom) {
    require_valid(atom);
    if (!(atom.cutoff_omega > atom.omega0))
        throw std::domain_error("level_shift: cutoff must exceed the transition frequency");
    const double gamma0 = derive_gamma0(atom);
    const double w0 = atom.omega0;
    const double cutoff = atom.cutoff_omega;
    LevelShift b;
    b.b_r = -(gamma0 * atom.hbar / (2.0 * w0 * M_PI)) *
            (cutoff + w0 * std::log((cutoff - w0) / w0));
    b.b_i = -gamma0 * atom.hbar / 2.0;
    return b;
}

Vec3 mean_acceleration(const AtomParams& atom, const MomentumWavepacket& pack, double t,
                       ShiftMode mode) {
    require_valid(atom);
    require_normalized(pack);
    if (t < 0.0) throw std::invalid_argument("mean_acceleration: t < 0");
    const double gamma0 = derive_gamma0(atom);
    const double mu2 = atom.dipole_mag * atom.dipole_mag;
    const double w0 = atom.omega0;
    const double m = atom.mass;
    const double c = atom.c_light;
    const double we = emission_frequency(atom, mode);
    const double ax = -(w0 * w0 * mu2 / (3.0 * m * m * c * c * c * c * c)) * we * we *
                      std::exp(-gamma0 * t) * pack.mean_p();
    return {ax, 0.0, 0.0};
}

ForceSample friction_force(const AtomParams& atom, const MomentumWavepacket& pack, double t,
                           ShiftMode mode) {
    require_valid(atom);
    require_normalized(pack);
    if (t < 0.0) throw std::invalid_argument("friction_force: t < 0");
    const double gamma0 = derive_gamma0(atom);
    const double we = emission_frequency(atom, mode);
    const double pref = we * we * atom.hbar * gamma0 /
                        (4.0 * atom.mass * atom.omega0 * atom.c_light * atom.c_light);
    return {t, {-pref * std::exp(-gamma0 * t) * pack.mean_p(), 0.0, 0.0}};
}

Vec3 total_impulse(const AtomParams& atom, const MomentumWavepacket& pack, ShiftMode mode) {
    require_valid(atom);
    require_normalized(pack);
    const double we = emission_frequency(atom, mode);
    const double pref =
        we * we * atom.hbar / (4.0 * atom.mass * atom.omega0 * atom.c_light * atom.c_light);
    return {-pref * pack.mean_p(), 0.0, 0.0};
}

ForceSample emission_recoil_force(const AtomParams& atom, const MomentumWavepacket& pack,
                                  double t) {
    require_valid(atom);
    require_normalized(pack);
    if (t < 0.0) throw std::invalid_argument("emission_recoil_force: t < 0");
    const double gamma0 = derive_gamma0(atom);
    const double pref = atom.hbar * atom.omega0 / (atom.mass * atom.c_light * atom.c_light);
    return {t, {-pref * gamma0 * std::exp(-gamma0 * t) * pack.mean_p(), 0.0, 0.0}};
}

Vec3 emission_recoil_impulse(const AtomParams& atom, const MomentumWavepacket& pack) {
    require_valid(atom);
    require_normalized(pack);
    const double pref = atom.hbar * atom.omega0 / (atom.mass * atom.c_light * atom.c_light);
    return {-pref * pack.mean_p(), 0.0, 0.0};
}

double mode_detuning(const CoupledGrid& coupled, std::size_t entry, double p0x) {
    const AtomParams& atom = coupled.atom;
    const Mode& m = coupled.grid->modes[coupled.entries[entry].mode_index];
    const double k2 = dot(m.k, m.k);
    return m.omega + atom.hbar * k2 / (2.0 * atom.mass) - m.k.x * p0x / atom.mass - atom.omega0;
}

PoleAmplitudes pole_amplitudes(const CoupledGrid& coupled, double p0x, double t) {
    if (t < 0.0) throw std::invalid_argument("pole_amplitudes: t < 0");
    const AtomParams& atom = coupled.atom;
    const double gamma0 = derive_gamma0(atom);
    const std::size_t n = coupled.size();

    PoleAmplitudes out;
    out.c_modes.assign(n, {0.0, 0.0});
    if (gamma0 == 0.0) {
        out.c_excited = 1.0;
        return out;
    }

    std::vector<double> g2(n), delta(n);
    for (std::size_t j = 0; j < n; ++j) {
        g2[j] = std::norm(coupled.entries[j].g_eff) / (atom.hbar * atom.hbar);
        delta[j] = mode_detuning(coupled, j, p0x);
    }

    // Self-consistent discrete pole: lambda = -sum_j g2_j / (lambda - i Delta_j).
    // The Lorentzian regularization by Re(lambda) = -Gamma/2 makes the sum a
    // smooth density estimate; a handful of iterations converges in the
    // weak-coupling regime.
    std::complex<double> lambda(-0.5 * gamma0, 0.0);
    for (int it = 0; it < 12; ++it) {
        std::complex<double> s(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            s += g2[j] / (lambda - std::complex<double>(0.0, delta[j]));
        const std::complex<double> next = -s;
        if (std::abs(next - lambda) < 1e-14 * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    out.rate = -2.0 * lambda.real();
    out.shift = -lambda.imag();

    out.c_excited = std::exp(lambda * t);
    const std::complex<double> ii(0.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        const std::complex<double> gconj = std::conj(coupled.entries[j].g_eff) / atom.hbar;
        const std::complex<double> denom = lambda - ii * delta[j];
        out.c_modes[j] = -ii * gconj * (std::exp(denom * t) - 1.0) / denom;
    }
    return out;
}

} // namespace radfriction
