#ifndef RADFRICTION_ANALYTIC_HPP
#define RADFRICTION_ANALYTIC_HPP

#include <complex>
#include <vector>

#include "radfriction/modegrid.hpp"
#include "radfriction/params.hpp"
#include "radfriction/vec3.hpp"
#include "radfriction/wavepacket.hpp"

namespace radfriction {

// Complex self-energy of the excited state: B = B_r + i B_i with
// B_i = -Gamma0 hbar / 2 exactly.
struct LevelShift {
    double b_r = 0.0;
    double b_i = 0.0;
};

struct ForceSample {
    double t = 0.0;
    Vec3 f_vec;
};

// The narrow-band simulator generates a near-zero shift of its own, so
// comparisons against it evaluate the closed forms with B_r := 0.
enum class ShiftMode { with_shift, zero_shift };

// B_r = -(Gamma0 hbar / (2 omega0 pi)) [Omega + omega0 ln((Omega-omega0)/omega0)],
// B_i = -Gamma0 hbar / 2.  Requires Omega > omega0.
LevelShift level_shift(const AtomParams& atom);

// d^2<R_x>/dt^2 = -(omega0^2 |mu|^2 / (3 m^2 c^5)) (omega0 + B_r/hbar)^2
//                 e^{-Gamma0 t} <p0>, transverse components exactly zero.
Vec3 mean_acceleration(const AtomParams& atom, const MomentumWavepacket& pack, double t,
                       ShiftMode mode = ShiftMode::with_shift);

// F_r = -((omega0 + B_r/hbar)^2 hbar Gamma0 / (4 m omega0 c^2)) e^{-Gamma0 t} <p0>.
ForceSample friction_force(const AtomParams& atom, const MomentumWavepacket& pack, double t,
                           ShiftMode mode);

// Time integral of the friction force over [0, inf).
Vec3 total_impulse(const AtomParams& atom, const MomentumWavepacket& pack, ShiftMode mode);

// Closed-form force from exact photon-momentum bookkeeping.  To first order
// in beta the emitted photon's mean momentum along x is hbar (omega0/c) beta:
// the Doppler-shifted resonance frequency, the resonant coupling strength,
// and the density of resonant modes each tilt the emission pattern by
// beta cos(psi), and the three tilts contribute beta <cos^2 psi> = beta/3
// apiece.  Multiplying by the emission rate Gamma0 e^{-Gamma0 t} gives
//   F_b = -(hbar omega0 / (m c^2)) Gamma0 e^{-Gamma0 t} <p0> x-hat,
// four times the drag-law prefactor of friction_force; a mode-sum evolution
// conserves momentum exactly and therefore tracks this form, so it is the
// reference paired with simulated trajectories.
ForceSample emission_recoil_force(const AtomParams& atom, const MomentumWavepacket& pack,
                                  double t);

// Time integral of the bookkeeping force: -(hbar omega0/(m c^2)) <p0> x-hat,
// i.e. the recoil parameter times the mean initial momentum.
Vec3 emission_recoil_impulse(const AtomParams& atom, const MomentumWavepacket& pack);

struct PoleAmplitudes {
    std::complex<double> c_excited;
    std::vector<std::complex<double>> c_modes; // index-aligned with coupled.entries
    double rate = 0.0;  // decay rate of the discrete pole
    double shift = 0.0; // real frequency shift of the discrete pole
};

// Pole-approximation amplitudes of the entangled atom-photon state on the
// given coupled grid, in the rotating frame of the dynamics module.  The
// complex pole (rate and induced shift) is solved self-consistently from the
// discrete mode self-energy, so the result is directly comparable to the
// brute-force integration on the same grid; on a wide, well-resolved grid the
// rate converges to Gamma0 of the stationary atom.
PoleAmplitudes pole_amplitudes(const CoupledGrid& coupled, double p0x, double t);

// Rotating-frame detuning of one coupled entry for initial momentum p0 x-hat:
// Delta = omega + hbar k^2/(2m) - k.p0/m - omega0.
double mode_detuning(const CoupledGrid& coupled, std::size_t entry, double p0x);

} // namespace radfriction

#endif
