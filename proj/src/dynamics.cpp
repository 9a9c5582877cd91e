#include "radfriction/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "radfriction/quadrules.hpp"

namespace radfriction {

void rotating_frame_rhs(const AmplitudeState& state, const CoupledGrid& coupled, double p0x,
                        std::complex<double>& dc_excited,
                        std::vector<std::complex<double>>& dc_modes) {
    const std::size_t n = coupled.size();
    if (state.c_modes.size() != n)
        throw std::invalid_argument("rotating_frame_rhs: state/coupling index misalignment");
    dc_modes.assign(n, {0.0, 0.0});
    const double hbar = coupled.atom.hbar;
    const std::complex<double> ii(0.0, 1.0);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double delta = mode_detuning(coupled, j, p0x);
        const std::complex<double> phase = std::exp(ii * delta * state.t);
        const std::complex<double> g = coupled.entries[j].g_eff;
        acc += g * phase * state.c_modes[j];
        dc_modes[j] = -ii / hbar * std::conj(g) * std::conj(phase) * state.c_excited;
    }
    dc_excited = -ii / hbar * acc;
}

namespace {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RADFRICTION_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct StepPlan {
    double dt = 0.0;
    int steps_per_output = 0;
    int n_outputs = 0; // excluding t = 0
};

StepPlan plan_steps(const CoupledGrid& coupled, double p0x, const EvolveOptions& opt,
                    double delta_max) {
    if (!(opt.t_final > 0.0)) throw std::invalid_argument("evolve: t_final must be positive");
    if (!(opt.out_stride > 0.0)) throw std::invalid_argument("evolve: out_stride must be positive");
    (void)coupled;
    (void)p0x;

    StepPlan plan;
    plan.n_outputs = static_cast<int>(std::llround(opt.t_final / opt.out_stride));
    if (plan.n_outputs < 1 ||
        std::abs(plan.n_outputs * opt.out_stride - opt.t_final) > 1e-9 * opt.t_final)
        throw std::invalid_argument("evolve: out_stride must divide t_final");

    const double dt_limit =
        delta_max > 0.0 ? opt.dt_phase / delta_max : opt.out_stride;
    if (opt.dt_override > 0.0 && opt.dt_override > dt_limit * (1.0 + 1e-12))
        throw std::invalid_argument(
            "evolve: requested step " + std::to_string(opt.dt_override) +
            " does not resolve the largest detuning (limit " + std::to_string(dt_limit) + ")");
    const double dt_want = opt.dt_override > 0.0 ? opt.dt_override : dt_limit;
    plan.steps_per_output = std::max(1, static_cast<int>(std::ceil(opt.out_stride / dt_want - 1e-12)));
    plan.dt = opt.out_stride / plan.steps_per_output;
    return plan;
}

} // namespace

SampleSeries evolve_sample(const CoupledGrid& coupled, double p0x, double weight,
                           const EvolveOptions& opt) {
    const std::size_t n = coupled.size();
    const ModeGrid& grid = *coupled.grid;
    const double hbar = coupled.atom.hbar;

    std::vector<double> r(n), delta(n);
    double delta_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        r[j] = std::abs(coupled.entries[j].g_eff) / hbar;
        delta[j] = mode_detuning(coupled, j, p0x);
        delta_max = std::max(delta_max, std::abs(delta[j]));
    }
    const StepPlan plan = plan_steps(coupled, p0x, opt, delta_max);
    const double dt = plan.dt;

    // Half-step phase rotations e^{-i Delta dt/2}; stage phases come from
    // products of these, so no trig is evaluated inside the time loop.
    std::vector<double> ur(n), ui(n);
    for (std::size_t j = 0; j < n; ++j) {
        ur[j] = std::cos(0.5 * delta[j] * dt);
        ui[j] = -std::sin(0.5 * delta[j] * dt);
    }
    double c_r = 0.0, c_i = 0.0, c_abs = 0.0; // Cc = sum r^2 conj(u), Cr = sum r^2
    for (std::size_t j = 0; j < n; ++j) {
        const double r2 = r[j] * r[j];
        c_r += r2 * ur[j];
        c_i -= r2 * ui[j];
        c_abs += r2;
    }

    std::vector<double> cre(n, 0.0), cim(n, 0.0);   // mode amplitudes
    std::vector<double> phr(n, 1.0), phi(n, 0.0);   // e^{-i Delta t}
    std::vector<double> p1r(n), p1i(n);             // scratch: mid-step phases
    std::complex<double> cE(1.0, 0.0);

    SampleSeries out;
    out.p0x = p0x;
    out.weight = weight;
    out.times.reserve(plan.n_outputs + 1);
    out.norm.reserve(plan.n_outputs + 1);
    out.survival.reserve(plan.n_outputs + 1);
    out.photon_k_sum.reserve(plan.n_outputs + 1);

    auto record = [&](double t) {
        KahanSum nsum, kx, ky, kz;
        for (std::size_t j = 0; j < n; ++j) {
            const double a2 = cre[j] * cre[j] + cim[j] * cim[j];
            nsum.add(a2);
            const Vec3& k = grid.modes[coupled.entries[j].mode_index].k;
            kx.add(a2 * k.x);
            ky.add(a2 * k.y);
            kz.add(a2 * k.z);
        }
        const double surv = std::norm(cE);
        out.times.push_back(t);
        out.survival.push_back(surv);
        out.norm.push_back(surv + nsum.sum);
        out.photon_k_sum.push_back({kx.sum, ky.sum, kz.sum});
    };

    record(0.0);

    const double dt2 = 0.5 * dt;
    const double dt6 = dt / 6.0;
    for (int block = 0; block < plan.n_outputs; ++block) {
        for (int step = 0; step < plan.steps_per_output; ++step) {
            // Stage sums S_i = sum_j r_j conj(ph_i) c_j at the three stage times.
            double s0r = 0.0, s0i = 0.0, s1r = 0.0, s1i = 0.0, s2r = 0.0, s2i = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double a = phr[j], b = phi[j];
                const double uu = ur[j], vv = ui[j];
                const double m1r = a * uu - b * vv;
                const double m1i = a * vv + b * uu;
                const double m2r = m1r * uu - m1i * vv;
                const double m2i = m1r * vv + m1i * uu;
                p1r[j] = m1r;
                p1i[j] = m1i;
                const double cr = cre[j], ci = cim[j], rj = r[j];
                s0r += rj * (a * cr + b * ci);
                s0i += rj * (a * ci - b * cr);
                s1r += rj * (m1r * cr + m1i * ci);
                s1i += rj * (m1r * ci - m1i * cr);
                s2r += rj * (m2r * cr + m2i * ci);
                s2i += rj * (m2r * ci - m2i * cr);
            }
            const std::complex<double> s0(s0r, s0i), s1(s1r, s1i), s2(s2r, s2i);
            const std::complex<double> cc(c_r, c_i);

            const std::complex<double> k1 = s0;
            const std::complex<double> cE2 = cE + dt2 * k1;
            const std::complex<double> k2 = s1 - dt2 * cc * cE;
            const std::complex<double> cE3 = cE + dt2 * k2;
            const std::complex<double> k3 = s1 - dt2 * c_abs * cE2;
            const std::complex<double> cE4 = cE + dt * k3;
            const std::complex<double> k4 = s2 - dt * cc * cE3;

            const std::complex<double> z0 = dt6 * cE;
            const std::complex<double> z1 = dt6 * 2.0 * (cE2 + cE3);
            const std::complex<double> z2 = dt6 * cE4;
            cE += dt6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

            const double z0r = z0.real(), z0i = z0.imag();
            const double z1r = z1.real(), z1i = z1.imag();
            const double z2r = z2.real(), z2i = z2.imag();
            for (std::size_t j = 0; j < n; ++j) {
                const double a = phr[j], b = phi[j];
                const double m1r = p1r[j], m1i = p1i[j];
                const double uu = ur[j], vv = ui[j];
                const double m2r = m1r * uu - m1i * vv;
                const double m2i = m1r * vv + m1i * uu;
                const double wr = a * z0r - b * z0i + m1r * z1r - m1i * z1i + m2r * z2r - m2i * z2i;
                const double wi = a * z0i + b * z0r + m1r * z1i + m1i * z1r + m2r * z2i + m2i * z2r;
                cre[j] -= r[j] * wr;
                cim[j] -= r[j] * wi;
                phr[j] = m2r;
                phi[j] = m2i;
            }
        }
        record((block + 1) * opt.out_stride);
    }

    if (opt.keep_final_state) {
        out.final_state.t = opt.t_final;
        out.final_state.c_excited = cE;
        out.final_state.c_modes.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            out.final_state.c_modes[j] = {cre[j], cim[j]};
    }
    return out;
}

std::vector<SampleSeries> evolve(const MomentumWavepacket& pack, const CoupledGrid& coupled,
                                 const EvolveOptions& opt) {
    const auto& samples = pack.samples();
    std::vector<SampleSeries> result(samples.size());
    const int workers = std::min<int>(resolve_workers(opt.workers),
                                      static_cast<int>(samples.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= samples.size()) return;
            try {
                result[i] = evolve_sample(coupled, samples[i].p0x, samples[i].weight, opt);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return result;
}

ObservableSeries observables(const std::vector<SampleSeries>& trajectories) {
    if (trajectories.empty()) throw std::invalid_argument("observables: no trajectories");
    const std::size_t nt = trajectories.front().times.size();
    for (const auto& tr : trajectories)
        if (tr.times.size() != nt)
            throw std::invalid_argument("observables: inconsistent output times");

    ObservableSeries series;
    series.times = trajectories.front().times;
    series.survival.resize(nt);
    series.p_atom.resize(nt);
    series.p_photon.resize(nt);
    // hbar = 1 internally; photon momentum is hbar * sum |c|^2 k.
    for (std::size_t i = 0; i < nt; ++i) {
        KahanSum surv, pax, pay, paz, ppx, ppy, ppz;
        for (const auto& tr : trajectories) {
            const double w = tr.weight;
            surv.add(w * tr.survival[i]);
            const Vec3& ks = tr.photon_k_sum[i];
            pax.add(w * (tr.norm[i] * tr.p0x - ks.x));
            pay.add(w * (-ks.y));
            paz.add(w * (-ks.z));
            ppx.add(w * ks.x);
            ppy.add(w * ks.y);
            ppz.add(w * ks.z);
        }
        series.survival[i] = surv.sum;
        series.p_atom[i] = {pax.sum, pay.sum, paz.sum};
        series.p_photon[i] = {ppx.sum, ppy.sum, ppz.sum};
    }
    return series;
}

ForceSeries force_from_trajectory(const ObservableSeries& series, const AtomParams& atom,
                                  const MomentumWavepacket& pack) {
    const std::size_t nt = series.times.size();
    if (nt < 3) throw std::invalid_argument("force_from_trajectory: need at least 3 points");
    const double h = series.times[1] - series.times[0];
    for (std::size_t i = 1; i + 1 < nt; ++i)
        if (std::abs(series.times[i + 1] - series.times[i] - h) > 1e-9 * h)
            throw std::invalid_argument("force_from_trajectory: non-uniform time grid");

    ForceSeries force;
    force.times = series.times;
    force.f_sim.resize(nt);
    force.f_analytic_x.resize(nt);
    const auto& p = series.p_atom;
    if (nt < 5) {
        // Too few points for the smoothing stencil: plain differences.
        force.f_sim[0] = (1.0 / (2.0 * h)) * (-3.0 * p[0] + 4.0 * p[1] - 1.0 * p[2]);
        for (std::size_t i = 1; i + 1 < nt; ++i)
            force.f_sim[i] = (1.0 / (2.0 * h)) * (p[i + 1] - p[i - 1]);
        force.f_sim[nt - 1] =
            (1.0 / (2.0 * h)) * (3.0 * p[nt - 1] - 4.0 * p[nt - 2] + 1.0 * p[nt - 3]);
    } else {
        // Least-squares quadratic (Savitzky-Golay) slope over five-point
        // windows, evaluated at each sample time.  The momentum series rings
        // at the frequency-window edge detuning, far above the decay rate;
        // plain central differences alias that ringing into the force, while
        // the five-point slope suppresses it by an order of magnitude and is
        // still exact on quadratic trajectories, ends included.
        for (std::size_t i = 0; i < nt; ++i) {
            const std::size_t lo = std::min(nt - 5, i >= 2 ? i - 2 : 0);
            const double x0 = static_cast<double>(i) - static_cast<double>(lo) - 2.0;
            Vec3 b{}, c{};
            for (int j = 0; j < 5; ++j) {
                const double x = j - 2.0;
                b += (x / 10.0) * p[lo + j];
                c += ((x * x - 2.0) / 14.0) * p[lo + j];
            }
            force.f_sim[i] = (1.0 / h) * (b + (2.0 * x0) * c);
        }
    }
    for (std::size_t i = 0; i < nt; ++i)
        force.f_analytic_x[i] = emission_recoil_force(atom, pack, series.times[i]).f_vec.x;
    return force;
}

} // namespace radfriction
