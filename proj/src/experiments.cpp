#include "radfriction/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radfriction {

FitResult fit_decay(const std::vector<double>& times, const std::vector<double>& values,
                    const TimeWindow& window) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_decay: size mismatch");
    std::vector<double> t, logv;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window.t_min || times[i] > window.t_max) continue;
        if (!(values[i] > 0.0))
            throw std::invalid_argument("fit_decay: non-positive value inside the fit window");
        t.push_back(times[i]);
        logv.push_back(std::log(values[i]));
    }
    if (t.size() < 5) throw std::invalid_argument("fit_decay: need at least 5 points in window");

    const double n = static_cast<double>(t.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += logv[i];
        stt += t[i] * t[i];
        sty += t[i] * logv[i];
    }
    const double denom = n * stt - st * st;
    const double slope = (n * sty - st * sy) / denom;
    const double inter = (sy - slope * st) / n;

    FitResult fit;
    fit.rate = -slope;
    fit.amplitude = std::exp(inter);
    double ss_res = 0.0, ss_tot = 0.0;
    const double ymean = sy / n;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double pred = inter + slope * t[i];
        ss_res += (logv[i] - pred) * (logv[i] - pred);
        ss_tot += (logv[i] - ymean) * (logv[i] - ymean);
        const double rel = std::abs(std::expm1(logv[i] - pred));
        fit.residual_max = std::max(fit.residual_max, rel);
    }
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return fit;
}

ForceErrorSummary compare_force(const ForceSeries& force, const TimeWindow& window) {
    double peak = 0.0;
    for (double fx : force.f_analytic_x) peak = std::max(peak, std::abs(fx));
    const double floor = 1e-3 * peak;

    ForceErrorSummary summary;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < force.times.size(); ++i) {
        if (force.times[i] < window.t_min || force.times[i] > window.t_max) continue;
        const double ref = force.f_analytic_x[i];
        const double denom = std::max(std::abs(ref), floor);
        const double rel = std::abs(force.f_sim[i].x - ref) / denom;
        summary.max_rel = std::max(summary.max_rel, rel);
        sum += rel;
        ++count;
        summary.max_transverse =
            std::max({summary.max_transverse, std::abs(force.f_sim[i].y) / floor,
                      std::abs(force.f_sim[i].z) / floor});
    }
    if (count == 0) throw std::invalid_argument("compare_force: empty window");
    summary.mean_rel = sum / count;
    return summary;
}

SweepResult linearity_sweep(const std::vector<double>& betas, const AtomParams& atom,
                            double regime_threshold,
                            const std::function<double(double beta)>& force_at_tstar) {
    if (betas.size() < 4) throw std::invalid_argument("linearity_sweep: need >= 4 beta values");
    SweepResult result;
    for (double beta : betas) {
        SweepPoint pt;
        pt.beta = beta;
        pt.mean_p = beta * atom.mass * atom.c_light;
        pt.out_of_regime = beta > regime_threshold;
        pt.force_x = force_at_tstar(beta);
        result.points.push_back(pt);
    }
    std::sort(result.points.begin(), result.points.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.beta < b.beta; });

    const double n = static_cast<double>(result.points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& pt : result.points) {
        sx += pt.mean_p;
        sy += pt.force_x;
        sxx += pt.mean_p * pt.mean_p;
        sxy += pt.mean_p * pt.force_x;
    }
    const double denom = n * sxx - sx * sx;
    result.slope = (n * sxy - sx * sy) / denom;
    result.intercept = (sy - result.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ymean = sy / n;
    for (const auto& pt : result.points) {
        const double pred = result.intercept + result.slope * pt.mean_p;
        ss_res += (pt.force_x - pred) * (pt.force_x - pred);
        ss_tot += (pt.force_x - ymean) * (pt.force_x - ymean);
    }
    result.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return result;
}

bool GridResolution::refines(const GridResolution& coarser) const {
    return n_omega >= coarser.n_omega && n_theta >= coarser.n_theta && n_phi >= coarser.n_phi &&
           (n_omega > coarser.n_omega || n_theta > coarser.n_theta || n_phi > coarser.n_phi);
}

std::string GridResolution::label() const {
    return std::to_string(n_omega) + "x" + std::to_string(n_theta) + "x" + std::to_string(n_phi);
}

ConvergenceTable convergence_study(
    const std::vector<GridResolution>& resolutions,
    const std::function<double(const GridResolution&)>& error_of_resolution) {
    if (resolutions.size() < 3)
        throw std::invalid_argument("convergence_study: need >= 3 resolutions");
    for (std::size_t i = 1; i < resolutions.size(); ++i)
        if (!resolutions[i].refines(resolutions[i - 1]))
            throw std::invalid_argument("convergence_study: ladder is not strictly refining");

    ConvergenceTable table;
    for (const auto& res : resolutions)
        table.points.push_back({res, error_of_resolution(res)});
    for (std::size_t i = 1; i < table.points.size(); ++i)
        if (!(table.points[i].error < table.points[i - 1].error)) table.monotone = false;
    return table;
}

} // namespace radfriction
