#ifndef RADFRICTION_DYNAMICS_HPP
#define RADFRICTION_DYNAMICS_HPP

#include <complex>
#include <vector>

#include "radfriction/analytic.hpp"
#include "radfriction/modegrid.hpp"
#include "radfriction/params.hpp"
#include "radfriction/vec3.hpp"
#include "radfriction/wavepacket.hpp"

namespace radfriction {

// Excited amplitude plus one amplitude per coupled mode, for one momentum
// sample, in the rotating frame.
struct AmplitudeState {
    double t = 0.0;
    std::complex<double> c_excited{1.0, 0.0};
    std::vector<std::complex<double>> c_modes;
};

// Rotating-frame equations of motion:
//   dcE/dt = -(i/hbar) sum_j g_j e^{+i Delta_j t} c_j
//   dcj/dt = -(i/hbar) g_j^* e^{-i Delta_j t} cE
// with Delta_j the recoil- and Doppler-corrected detuning.
void rotating_frame_rhs(const AmplitudeState& state, const CoupledGrid& coupled, double p0x,
                        std::complex<double>& dc_excited,
                        std::vector<std::complex<double>>& dc_modes);

struct EvolveOptions {
    double t_final = 0.0;
    double out_stride = 0.0;   // spacing of output times; must divide t_final
    double dt_phase = 0.05;    // max phase advance per step: dt = dt_phase / max|Delta|
    double dt_override = 0.0;  // if > 0, requested step (validated against the phase limit)
    bool keep_final_state = false;
    int workers = 0;           // 0 = hardware concurrency; result is worker-independent
};

// Per-sample scalar observables at the output times.  Full amplitude
// snapshots are not stored (they would not fit for production grids).
struct SampleSeries {
    double p0x = 0.0;
    double weight = 0.0;
    std::vector<double> times;
    std::vector<double> norm;       // |cE|^2 + sum |cj|^2
    std::vector<double> survival;   // |cE|^2
    std::vector<Vec3> photon_k_sum; // sum_j |cj|^2 k_j (momentum / hbar)
    AmplitudeState final_state;     // filled when keep_final_state is set
};

SampleSeries evolve_sample(const CoupledGrid& coupled, double p0x, double weight,
                           const EvolveOptions& opt);

// All samples of a wavepacket; independent evolutions, run concurrently.
std::vector<SampleSeries> evolve(const MomentumWavepacket& pack, const CoupledGrid& coupled,
                                 const EvolveOptions& opt);

struct ObservableSeries {
    std::vector<double> times;
    std::vector<double> survival;
    std::vector<Vec3> p_atom;
    std::vector<Vec3> p_photon;
};

// Weight-summed observables, fixed summation order (sample index order).
ObservableSeries observables(const std::vector<SampleSeries>& trajectories);

struct ForceSeries {
    std::vector<double> times;
    std::vector<Vec3> f_sim;
    std::vector<double> f_analytic_x; // emission-recoil closed form at the same times
};

// Numerical force d<P_atom>/dt: least-squares quadratic slope over five-point
// windows (exact on quadratics, damps grid-edge ringing); plain differences
// below five points.  Requires >= 3 uniformly spaced times.
ForceSeries force_from_trajectory(const ObservableSeries& series, const AtomParams& atom,
                                  const MomentumWavepacket& pack);

} // namespace radfriction

#endif
