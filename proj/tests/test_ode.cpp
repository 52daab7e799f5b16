#include <doctest.h>

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tuza/ode.hpp"

using namespace tuza;

TEST_CASE("right-hand sides") {
    CHECK(rhs(System::Y, 0.0) == 2.0);
    CHECK(std::abs(rhs(System::Y, zeta())) < 1e-14);
    CHECK(zeta() == doctest::Approx(0.6367614).epsilon(1e-7));
    CHECK(rhs(System::A, 0.0) == 1.0);
    CHECK(rhs(System::Z, 0.0) == 2.0);
}

TEST_CASE("y rises monotonically to zeta") {
    const OdeSolution y = integrate(System::Y, 5.0);
    CHECK(y(0.0) == 0.0);
    const auto& v = y.values();
    for (std::size_t i = 1; i < v.size(); ++i) {
        REQUIRE(v[i] >= v[i - 1]);
        REQUIRE(v[i] <= zeta());
    }
    CHECK(y(3.0) >= zeta() - 1e-3);
    CHECK(y(5.0) >= zeta() - 1e-4);
    CHECK(y(1.0) == doctest::Approx(0.631463).epsilon(1e-5));
    CHECK_THROWS_AS(y(5.1), std::out_of_range);
    CHECK_THROWS_AS(y(-0.1), std::out_of_range);
    CHECK_THROWS_AS(integrate(System::Y, 0.0), std::invalid_argument);
}

TEST_CASE("independent Euler and step refinement agree") {
    for (auto which : {System::Y, System::A, System::Z}) {
        const double rk = integrate(which, 3.0)(3.0);
        CHECK(std::abs(rk - euler_value(which, 3.0, 1e-5)) < 1e-4);
        CHECK(std::abs(rk - integrate(which, 3.0, 5e-5)(3.0)) < 1e-10);
    }
    const double y1 = integrate(System::Y, 3.0, 0.04)(3.0);
    const double y2 = integrate(System::Y, 3.0, 0.02)(3.0);
    const double y3 = integrate(System::Y, 3.0, 0.01)(3.0);
    const double order = std::log2(std::abs(y1 - y2) / std::abs(y2 - y3));
    CHECK(order == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("a(t) stays below t and z stays below 0.5932") {
    const OdeSolution a = integrate(System::A, 3.0);
    for (std::size_t i = 0; i < a.nodes(); ++i) REQUIRE(a.value_at(i) <= a.time_at(i) + 1e-15);
    CHECK(a(0.2) < 0.2);
    CHECK(a(1.0) == doctest::Approx(0.58259).epsilon(1e-4));
    const OdeSolution z = integrate(System::Z, 3.0);
    double zmax = 0.0;
    for (double x : z.values()) zmax = std::max(zmax, x);
    CHECK(zmax == doctest::Approx(0.59307).epsilon(1e-4));
}

TEST_CASE("dense output interpolates the grid and its derivative") {
    const OdeSolution y = integrate(System::Y, 2.0, 1e-3);
    CHECK(y(y.time_at(700)) == y.value_at(700));
    CHECK(y.derivative(0.5) == doctest::Approx(rhs(System::Y, y(0.5))).epsilon(1e-8));
    std::ostringstream out;
    y.write_csv(out, 1000);
    CHECK(out.str().rfind("t,y,derivative\n", 0) == 0);
}

TEST_CASE("closed forms") {
    const ClosedForms zero = closed_forms_at(0.0);
    CHECK(zero.q(0, 0) == 1.0);
    CHECK(zero.r(0) == 1.0);
    CHECK(zero.s(0) == 0.0);
    CHECK(zero.alpha() == 0.0);
    CHECK(zero.kappa() == 0.0);

    const double y = 0.5;
    const ClosedForms f = closed_forms_at(y);
    CHECK(f.q(0, 0) == doctest::Approx(std::exp(-2 * y * y)));
    CHECK(f.r(0) == doctest::Approx(std::exp(-y * y)));
    CHECK(f.s(0) == doctest::Approx(std::exp(-y * y) * y));
    CHECK(f.r(-1) == 0.0);
    CHECK(f.q(2, 3) == doctest::Approx(f.r(2) * f.r(3)));

    CHECK(std::abs(kappa_series(0.6, 40) - closed_forms_at(0.6).kappa()) < 1e-12);
    for (double x : {0.1, 0.3, 0.6, 0.9}) {
        const ClosedForms g = closed_forms_at(x);
        double r_sum = 0.0;
        double s_weighted = 0.0;
        for (long c = 0; c <= 40; ++c) {
            r_sum += g.r(c);
            s_weighted += g.s(c) / (c + 1.0);
        }
        CHECK(r_sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(x * g.kappa() == doctest::Approx(2.0 * (1.0 - g.r(0))).epsilon(1e-12));
        CHECK(2.0 * s_weighted == doctest::Approx(g.kappa()).epsilon(1e-12));
    }
    // Continuity at 0 (kappa ~ 2y).
    CHECK(closed_forms_at(1e-9).kappa() == doctest::Approx(2e-9).epsilon(1e-6));
    CHECK_THROWS_AS(closed_forms_at(1.5), std::domain_error);
    CHECK_THROWS_AS(closed_forms_at(-0.1), std::domain_error);
}

TEST_CASE("master equations hold along y(t)") {
    const auto start = std::chrono::steady_clock::now();
    const OdeSolution y = integrate(System::Y, 3.0);
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        for (std::size_t b = 0; b <= 3; ++b) {
            for (std::size_t c = 0; c <= 3; ++c) {
                const MasterResidual r = master_equation_residual(y, t, b, c);
                CHECK(r.q < 1e-6);
                CHECK(r.r < 1e-6);
                CHECK(r.s < 1e-6);
            }
        }
    }
    const MasterResidual at0 = master_equation_residual(y, 0.0, 0, 0);
    CHECK(at0.one_sided);
    CHECK(at0.r < 1e-6);
    CHECK(at0.s < 1e-6);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
}

TEST_CASE("error band diagnostic") {
    CHECK(error_band(1e4, 0.0) == doctest::Approx(std::pow(1e4, -0.2)));
    CHECK(error_band(1e4, 0.2) > error_band(1e4, 0.1));
    CHECK(error_band(1e4, 0.1) > 1.0);
    CHECK_THROWS_AS(error_band(5, 0.1), std::invalid_argument);
}
