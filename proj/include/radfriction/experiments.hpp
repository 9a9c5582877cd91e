#ifndef RADFRICTION_EXPERIMENTS_HPP
#define RADFRICTION_EXPERIMENTS_HPP

#include <functional>
#include <string>
#include <vector>

#include "radfriction/dynamics.hpp"

namespace radfriction {

struct FitResult {
    double rate = 0.0;      // fitted exponential decay rate
    double amplitude = 0.0; // fitted prefactor
    double r_squared = 0.0;
    double residual_max = 0.0; // max relative residual inside the window
};

struct TimeWindow {
    double t_min = 0.0;
    double t_max = 0.0;
};

// Log-linear least squares of A e^{-rate t} on the samples inside the window.
FitResult fit_decay(const std::vector<double>& times, const std::vector<double>& values,
                    const TimeWindow& window);

struct ForceErrorSummary {
    double max_rel = 0.0;
    double mean_rel = 0.0;
    double max_transverse = 0.0; // max |F_y|,|F_z| relative to the 1e-3 |F_x| floor
};

// Relative error of the simulated x force against the paired analytic
// reference, with an absolute floor of 1e-3 of the peak |F_x| in the
// denominator.  Transverse components are compared against the same floor.
ForceErrorSummary compare_force(const ForceSeries& force, const TimeWindow& window);

struct SweepPoint {
    double beta = 0.0;
    double mean_p = 0.0;
    double force_x = 0.0;
    bool out_of_regime = false;
};

struct SweepResult {
    std::vector<SweepPoint> points; // sorted by beta
    double slope = 0.0;             // dF_x / d<p0>
    double intercept = 0.0;
    double r_squared = 0.0;
};

// F_x(t*) against <p0> for a list of beta values.  The data source maps a
// beta to the force readout; points are computed independently and merged in
// sorted order, so the result is schedule-independent.
SweepResult linearity_sweep(const std::vector<double>& betas, const AtomParams& atom,
                            double regime_threshold,
                            const std::function<double(double beta)>& force_at_tstar);

struct GridResolution {
    int n_omega = 0;
    int n_theta = 0;
    int n_phi = 0;
    bool refines(const GridResolution& coarser) const;
    std::string label() const;
};

struct ConvergencePoint {
    GridResolution resolution;
    double error = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergencePoint> points;
    bool monotone = true; // strictly decreasing error along the ladder
};

// Error of a grid-dependent quantity against its analytic target, over a
// strictly refining ladder of resolutions.
ConvergenceTable convergence_study(
    const std::vector<GridResolution>& resolutions,
    const std::function<double(const GridResolution&)>& error_of_resolution);

} // namespace radfriction

#endif
