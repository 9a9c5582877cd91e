#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radfriction/analytic.hpp"
#include "radfriction/experiments.hpp"

using namespace radfriction;

namespace {

AtomParams toy_atom(double gamma0 = 0.01) {
    AtomParams a;
    a.omega0 = 1.0;
    a.mass = 100.0;
    a.cutoff_omega = 100.0;
    a.dipole_mag = dipole_from_gamma0(a, gamma0);
    return a;
}

} // namespace

TEST_CASE("fit_decay recovers an exact exponential") {
    std::vector<double> t, v;
    for (int i = 0; i <= 100; ++i) {
        t.push_back(0.5 * i);
        v.push_back(3.0 * std::exp(-0.04 * t.back()));
    }
    const auto fit = fit_decay(t, v, {5.0, 45.0});
    CHECK(fit.rate == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(fit.amplitude == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.residual_max < 1e-12);
}

TEST_CASE("fit_decay is equivariant under time rescaling") {
    std::vector<double> t, v, ts;
    for (int i = 0; i <= 60; ++i) {
        t.push_back(1.0 * i);
        ts.push_back(10.0 * i);
        v.push_back(std::exp(-0.1 * t.back()) * (1.0 + 0.01 * std::sin(3.0 * i)));
    }
    const auto base = fit_decay(t, v, {0.0, 60.0});
    const auto scaled = fit_decay(ts, v, {0.0, 600.0});
    CHECK(scaled.rate == doctest::Approx(base.rate / 10.0).epsilon(1e-12));
    CHECK(scaled.amplitude == doctest::Approx(base.amplitude).epsilon(1e-12));
}

TEST_CASE("fit_decay rejects unusable windows") {
    std::vector<double> t{0, 1, 2, 3, 4, 5}, v{1, 2, 3, -1, 2, 1};
    CHECK_THROWS_AS(fit_decay(t, v, {2.5, 3.5}), std::invalid_argument); // negative value
    CHECK_THROWS_AS(fit_decay(t, {1, 1, 1, 1, 1, 1}, {0.0, 2.0}),
                    std::invalid_argument); // fewer than 5 points in window
}

TEST_CASE("compare_force: identical series give zero error") {
    ForceSeries f;
    for (int i = 0; i <= 20; ++i) {
        const double t = 0.5 * i;
        const double fx = -1e-4 * std::exp(-0.01 * t);
        f.times.push_back(t);
        f.f_sim.push_back({fx, 0.0, 0.0});
        f.f_analytic_x.push_back(fx);
    }
    const auto err = compare_force(f, {0.0, 10.0});
    CHECK(err.max_rel == 0.0);
    CHECK(err.mean_rel == 0.0);
    CHECK(err.max_transverse == 0.0);
}

TEST_CASE("compare_force: a uniform 5 percent offset reads back as 5 percent") {
    ForceSeries f;
    for (int i = 0; i <= 20; ++i) {
        const double t = 0.5 * i;
        const double fx = -1e-4 * std::exp(-0.01 * t);
        f.times.push_back(t);
        f.f_sim.push_back({1.05 * fx, 1e-9, 0.0});
        f.f_analytic_x.push_back(fx);
    }
    const auto err = compare_force(f, {0.0, 10.0});
    CHECK(err.max_rel == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(err.mean_rel == doctest::Approx(0.05).epsilon(1e-6));
    // transverse measured against the 1e-3 peak-|Fx| floor = 1e-7
    CHECK(err.max_transverse == doctest::Approx(1e-9 / 1e-7).epsilon(1e-6));
}

TEST_CASE("linearity sweep on the closed-form force is a perfect line") {
    const auto atom = toy_atom();
    const double g0 = derive_gamma0(atom);
    const double t_star = 1.0 / g0;
    auto readout = [&](double beta) {
        const auto pack =
            MomentumWavepacket::gaussian(beta * atom.mass * atom.c_light, 0.0, 1);
        return friction_force(atom, pack, t_star, ShiftMode::zero_shift).f_vec.x;
    };
    const std::vector<double> betas{0.002, 0.005, 0.008, 0.01};
    const auto sweep = linearity_sweep(betas, atom, 0.05, readout);
    CHECK(sweep.points.size() == betas.size());
    CHECK(sweep.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sweep.slope < 0.0);
    CHECK(std::abs(sweep.intercept) < 1e-12 * std::abs(sweep.points.back().force_x));
    // slope equals the closed-form drag coefficient at t*
    const double expected =
        readout(0.01) / (0.01 * atom.mass * atom.c_light);
    CHECK(sweep.slope == doctest::Approx(expected).epsilon(1e-10));
    for (const auto& p : sweep.points) CHECK(!p.out_of_regime);
}

TEST_CASE("linearity sweep flags out-of-regime speeds and keeps sorted order") {
    const auto atom = toy_atom();
    auto readout = [&](double beta) { return -beta; };
    const auto sweep =
        linearity_sweep({0.01, 0.002, 0.2, 0.005}, atom, 0.05, readout);
    CHECK(sweep.points.size() == 4);
    for (std::size_t i = 1; i < sweep.points.size(); ++i)
        CHECK(sweep.points[i].beta > sweep.points[i - 1].beta);
    CHECK(sweep.points.back().out_of_regime);
    CHECK(!sweep.points.front().out_of_regime);
    CHECK_THROWS_AS(linearity_sweep({0.01, 0.02, 0.03}, atom, 0.05, readout),
                    std::invalid_argument); // fewer than 4 speeds
}

TEST_CASE("convergence study records a monotone ladder") {
    const std::vector<GridResolution> ladder{{100, 8, 8}, {200, 12, 12}, {400, 16, 16}};
    auto err = [](const GridResolution& r) { return 100.0 / r.n_omega; };
    const auto table = convergence_study(ladder, err);
    CHECK(table.points.size() == 3);
    CHECK(table.monotone);
    CHECK(table.points.front().error == doctest::Approx(1.0));
    CHECK(table.points.back().resolution.label() == "400x16x16");

    auto flat = [](const GridResolution&) { return 0.5; };
    CHECK(!convergence_study(ladder, flat).monotone);
}

TEST_CASE("convergence study rejects ladders that do not refine") {
    auto err = [](const GridResolution&) { return 0.0; };
    CHECK_THROWS_AS(convergence_study({{100, 8, 8}, {200, 12, 12}}, err),
                    std::invalid_argument); // fewer than 3 rungs
    CHECK_THROWS_AS(convergence_study({{100, 8, 8}, {200, 12, 12}, {200, 12, 12}}, err),
                    std::invalid_argument); // not strictly refining
}
