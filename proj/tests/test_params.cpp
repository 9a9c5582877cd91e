#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radfriction/params.hpp"

using namespace radfriction;

namespace {

AtomParams unit_atom() {
    AtomParams a;
    a.omega0 = 1.0;
    a.mass = 1.0;
    a.dipole_mag = 1.0;
    a.cutoff_omega = 100.0;
    return a;
}

} // namespace

TEST_CASE("gamma0: zero dipole means no decay") {
    AtomParams a = unit_atom();
    a.dipole_mag = 0.0;
    CHECK(derive_gamma0(a) == 0.0);
}

TEST_CASE("gamma0: direct substitution gives 4/3") {
    CHECK(derive_gamma0(unit_atom()) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("gamma0: cubic scaling in omega0") {
    AtomParams a = unit_atom();
    const double g1 = derive_gamma0(a);
    a.omega0 = 2.0;
    CHECK(derive_gamma0(a) == doctest::Approx(8.0 * g1).epsilon(1e-14));
}

TEST_CASE("gamma0 homogeneity in dipole, omega0, c") {
    const AtomParams base = unit_atom();
    const double g0 = derive_gamma0(base);
    for (double s : {2.0, 10.0}) {
        AtomParams a = base;
        a.dipole_mag *= s;
        CHECK(derive_gamma0(a) == doctest::Approx(s * s * g0).epsilon(1e-13));
        a = base;
        a.omega0 *= s;
        CHECK(derive_gamma0(a) == doctest::Approx(s * s * s * g0).epsilon(1e-13));
        a = base;
        a.c_light *= s;
        CHECK(derive_gamma0(a) == doctest::Approx(g0 / (s * s * s)).epsilon(1e-13));
    }
}

TEST_CASE("dipole_from_gamma0 round-trips") {
    AtomParams a = unit_atom();
    a.omega0 = 1.7;
    a.c_light = 2.0;
    a.dipole_mag = dipole_from_gamma0(a, 0.01);
    CHECK(derive_gamma0(a) == doctest::Approx(0.01).epsilon(1e-13));
}

TEST_CASE("dimensionless groups") {
    AtomParams a = unit_atom();
    a.mass = 100.0;
    SUBCASE("zero momentum means zero beta") {
        CHECK(dimensionless_groups(a, 0.0).beta == 0.0);
    }
    SUBCASE("recoil parameter by direct substitution") {
        CHECK(dimensionless_groups(a, 0.0).recoil_param == doctest::Approx(0.01).epsilon(1e-15));
    }
    SUBCASE("strong coupling is flagged out of regime") {
        const auto scales = dimensionless_groups(a, 0.0);
        CHECK(scales.gamma_ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
        const auto report = validate_params(a, scales);
        CHECK(report.ok());
        CHECK(!report.warnings.empty());
    }
}

TEST_CASE("validate_params hard errors") {
    AtomParams a = unit_atom();
    a.cutoff_omega = 0.5;
    const auto report = validate_params(a, {});
    CHECK(!report.ok());
    CHECK(report.errors.front().find("cutoff below transition frequency") != std::string::npos);
}

TEST_CASE("validate_params: deep-regime inputs give an empty report") {
    const auto report = validate_params(unit_atom(), {1e-3, 1e-3, 1e-3});
    CHECK(report.errors.empty());
    CHECK(report.warnings.empty());
}

TEST_CASE("validate_params: out-of-regime beta warns but does not error") {
    const auto report = validate_params(unit_atom(), {1e-3, 1e-3, 0.3});
    CHECK(report.ok());
    CHECK(report.warnings.size() == 1);
}

TEST_CASE("validate_params is monotone in violations") {
    AtomParams a = unit_atom();
    SimScales s{1e-3, 1e-3, 1e-3};
    const auto base = validate_params(a, s);
    s.beta = 0.3;
    auto worse = validate_params(a, s);
    CHECK(worse.errors.size() >= base.errors.size());
    CHECK(worse.warnings.size() >= base.warnings.size());
    a.mass = -1.0;
    auto worst = validate_params(a, s);
    CHECK(worst.errors.size() >= worse.errors.size());
    CHECK(worst.warnings.size() >= worse.warnings.size());
}
