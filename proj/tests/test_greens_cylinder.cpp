#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vet/errors.hpp"
#include "vet/greens_cylinder.hpp"
#include "vet/stable_math.hpp"

#include <cmath>
#include <complex>

using namespace vet;

namespace {

constexpr double pi = 3.14159265358979323846;

// Direct complex evaluation of -ln(16 [sin(pi(du+iM)/R) sin(pi(dv+iM)/R)]^2)/(4 pi).
std::complex<double> g_direct(double dx, double dt, double m, double r)
{
    const std::complex<double> i{0.0, 1.0};
    const auto s1 = std::sin(pi * (-dx + dt + i * m) / r);
    const auto s2 = std::sin(pi * (dx + dt + i * m) / r);
    return -std::log(16.0 * (s1 * s2) * (s1 * s2)) / (4.0 * pi);
}

// The closed-form components written directly in dx and M.
CovarianceComponents components_direct(double dx, double m, double r)
{
    CovarianceComponents k;
    k.a = m == 0.0 ? 0.0 : std::log(pi * m / std::sinh(pi * m / r) / r) / (2.0 * pi);
    k.b = -pi / (6.0 * r * r);
    const double num = 16.0 * std::pow(pi, 4) * std::pow(dx * dx + m * m, 2);
    const double den = 4.0 * std::pow(r, 4) * std::pow(std::cos(2.0 * dx * pi / r) - std::cosh(2.0 * m * pi / r), 2);
    k.c = std::log(num / den) / (8.0 * pi);
    k.d = (1.0 / (dx * dx) - pi * pi / std::pow(std::sin(dx * pi / r), 2) / (r * r)) / (2.0 * pi);
    k.a_prime = k.a;
    k.b_prime = k.b;
    return k;
}

double rel(double x, double y)
{
    return std::abs(x - y) / std::max(std::abs(y), 1e-300);
}

} // namespace

TEST_CASE("hadamard_g at the half-circle massless point")
{
    const GreensValue g = hadamard_g({0.5, 0.0, 0.0, 1.0});
    CHECK(g.value == doctest::Approx(-std::log(16.0) / (4.0 * pi)).epsilon(1e-14));
    CHECK(g.value == doctest::Approx(-0.22064).epsilon(1e-4));
    CHECK(g.imaginary_residual <= 1e-12);
}

TEST_CASE("hadamard_g at coincidence with M = 1 uses |sin(iy)|^2 = sinh^2 y")
{
    const GreensValue g = hadamard_g({0.0, 0.0, 1.0, 1.0});
    const double via_identity = -std::log(16.0 * std::pow(std::sinh(pi), 4)) / (4.0 * pi);
    CHECK(g.value == doctest::Approx(via_identity).epsilon(1e-14));
    CHECK(g.value == doctest::Approx(g_direct(0.0, 0.0, 1.0, 1.0).real()).epsilon(1e-14));
}

TEST_CASE("hadamard_g agrees with the direct complex expression")
{
    for (double dx : {-0.7, -0.3, 0.1, 0.25, 0.5, 0.8})
        for (double dt : {0.0, 0.05, -0.2})
            for (double m : {0.0, 0.3, 1.0, 2.5}) {
                if (m == 0.0 && dt != 0.0)
                    continue; // the complex log may change branch at real zeros of sin
                const GreensValue g = hadamard_g({dx, dt, m, 1.0});
                CHECK(g.value == doctest::Approx(g_direct(dx, dt, m, 1.0).real()).epsilon(1e-12));
            }
}

TEST_CASE("hadamard_g is real at equal times")
{
    for (double dx = -0.95; dx < 1.0; dx += 0.05)
        for (double m : {0.0, 0.01, 0.5, 1.0, 3.0, 300.0}) {
            if (m == 0.0 && std::abs(dx) < 1e-9)
                continue;
            CAPTURE(dx);
            CAPTURE(m);
            CHECK(hadamard_g({dx, 0.0, m, 1.0}).imaginary_residual <= 1e-12);
        }
}

TEST_CASE("hadamard_g stays finite for large M")
{
    const GreensValue g = hadamard_g({0.3, 0.0, 400.0, 1.0});
    CHECK(std::isfinite(g.value));
    // ln|sin(x + iy)| -> y - ln 2 for y >> 1
    CHECK(g.value == doctest::Approx(-(std::log(16.0) + 4.0 * (pi * 400.0 - std::log(2.0))) / (4.0 * pi)).epsilon(1e-12));
}

TEST_CASE("hadamard_g and free_space_g0 reject the massless coincident point")
{
    CHECK_THROWS_AS(hadamard_g({0.0, 0.0, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(free_space_g0({0.0, 0.0, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(hadamard_g({0.2, 0.0, -1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(hadamard_g({1.2, 0.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(hadamard_g({0.2, 0.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("free_space_g0 examples")
{
    const GreensValue g0 = free_space_g0({0.5, 0.0, 0.0, 1.0});
    CHECK(g0.value == doctest::Approx(-(std::log(16.0) + 4.0 * std::log(pi / 2.0)) / (4.0 * pi)).epsilon(1e-14));

    // R dependence enters only through ln R / pi.
    const double g1 = free_space_g0({0.25, 0.1, 1.0, 1.0}).value;
    const double g2 = free_space_g0({0.25, 0.1, 1.0, 2.0}).value;
    CHECK(g2 - g1 == doctest::Approx(std::log(2.0) / pi).epsilon(1e-13));
}

TEST_CASE("free_space_g0 is the large-R limit of hadamard_g")
{
    const double g0 = free_space_g0({0.25, 0.0, 1.0, 1.0}).value;
    double previous = 1.0;
    for (double r : {1e1, 1e2, 1e3}) {
        const double g = hadamard_g({0.25, 0.0, 1.0, r}).value - std::log(r) / pi;
        const double err = std::abs(g - g0);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-5);
}

TEST_CASE("regularized_gr examples")
{
    CHECK(regularized_gr({0.5, 0.0, 0.0, 1.0}).value
          == doctest::Approx(std::log(std::pow(pi, 4) / 16.0) / (4.0 * pi)).epsilon(1e-13));
    CHECK(regularized_gr({0.5, 0.0, 0.0, 1.0}).value == doctest::Approx(0.14374).epsilon(1e-4));
    // Coincidence, M -> 0: 2a -> 0.
    CHECK(regularized_gr({0.0, 0.0, 0.0, 1.0}).value == 0.0);
    CHECK(std::abs(regularized_gr({0.0, 0.0, 1e-8, 1.0}).value) < 1e-14);
}

TEST_CASE("regularized_gr equals G - G0 away from coincidence")
{
    for (double dx : {0.05, 0.2, 0.45})
        for (double dt : {0.0, 0.01})
            for (double m : {0.1, 1.0}) {
                const CylinderPoint p{dx, dt, m, 1.0};
                CHECK(regularized_gr(p).value
                      == doctest::Approx(hadamard_g(p).value - free_space_g0(p).value).epsilon(1e-11));
            }
}

TEST_CASE("regularized_gr is continuous and bounded at coincidence")
{
    const double at0 = regularized_gr({0.0, 0.0, 1.0, 1.0}).value;
    CHECK(std::abs(regularized_gr({1e-6, 0.0, 1.0, 1.0}).value - at0) < 1e-4);
    for (double m : {0.0, 0.1, 1.0, 5.0})
        for (double dx : {1e-3, 1e-6}) {
            const double v = regularized_gr({dx, 0.0, m, 1.0}).value;
            CHECK(std::isfinite(v));
            CHECK(std::abs(v) < 10.0);
        }
}

TEST_CASE("regularized_gr uses the nearest image")
{
    for (double dx : {0.1, 0.3})
        CHECK(regularized_gr({1.0 - dx, 0.0, 0.7, 1.0}).value
              == doctest::Approx(regularized_gr({dx, 0.0, 0.7, 1.0}).value).epsilon(1e-12));
}

TEST_CASE("components_closed_form examples")
{
    const CovarianceComponents half = components_closed_form(0.5, 0.0);
    CHECK(half.b == doctest::Approx(-pi / 6.0).epsilon(1e-15));
    CHECK(half.b == doctest::Approx(-0.523599).epsilon(1e-6));
    CHECK(half.d == doctest::Approx((4.0 - pi * pi) / (2.0 * pi)).epsilon(1e-13));
    CHECK(half.d == doctest::Approx(-0.93417).epsilon(1e-4));
    CHECK(half.c == doctest::Approx(std::log(std::pow(pi, 4) / 16.0) / (8.0 * pi)).epsilon(1e-13));
    CHECK(half.c == doctest::Approx(0.071871).epsilon(1e-5));
    CHECK(half.a == 0.0);
    CHECK(half.a_prime == half.a);
    CHECK(half.b_prime == half.b);

    const CovarianceComponents one = components_closed_form(0.25, 1.0);
    CHECK(one.a == doctest::Approx(std::log(pi / std::sinh(pi)) / (2.0 * pi)).epsilon(1e-14));
}

TEST_CASE("components_closed_form matches the direct formulas")
{
    for (double dx : {0.01, 0.1, 0.25, 0.4, 0.5})
        for (double m : {0.0, 0.05, 0.5, 1.0, 2.0})
            for (double r : {1.0, 2.0}) {
                const CovarianceComponents k = components_closed_form(dx * r, m, r);
                const CovarianceComponents e = components_direct(dx * r, m, r);
                CAPTURE(dx);
                CAPTURE(m);
                CHECK(k.a == doctest::Approx(e.a).epsilon(1e-12));
                CHECK(k.b == doctest::Approx(e.b).epsilon(1e-14));
                if (dx > 0.05 || m > 0.0) // the direct c cancels when both are small
                    CHECK(k.c == doctest::Approx(e.c).epsilon(1e-9));
                if (dx > 0.05)
                    CHECK(k.d == doctest::Approx(e.d).epsilon(1e-10));
            }
}

TEST_CASE("components_closed_form errors and symmetries")
{
    CHECK_THROWS_AS(components_closed_form(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(components_closed_form(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(components_closed_form(0.3, -1.0), DomainError);

    for (double dx : {0.05, 0.2, 0.33, 0.49})
        for (double m : {0.0, 0.7}) {
            const auto k = components_closed_form(dx, m);
            const auto reflected = components_closed_form(1.0 - dx, m);
            CHECK(reflected.c == doctest::Approx(k.c).epsilon(1e-12));
            CHECK(reflected.d == doctest::Approx(k.d).epsilon(1e-12));
        }

    for (double m = 0.0; m < 50.0; m += 0.37) {
        const double a = components_closed_form(0.3, m).a;
        if (m == 0.0)
            CHECK(a == 0.0);
        else
            CHECK(a < 0.0);
    }
}

TEST_CASE("components_closed_form d tends to b at short separation")
{
    CHECK(components_closed_form(1e-7, 0.0).d == doctest::Approx(-pi / 6.0).epsilon(1e-10));
    CHECK(components_closed_form(1e-7, 0.0).c == doctest::Approx(0.0));
}

TEST_CASE("components_numeric matches the closed form at M -> 0")
{
    const auto k = components_numeric(0.5, 0.0, 1.0, {1e-3, 1e-6});
    const auto e = components_closed_form(0.5, 0.0);
    CHECK(std::abs(k.c - e.c) < 1e-8);
    CHECK(rel(k.d, -0.93417655442731) < 1e-6);
    CHECK(rel(k.d, e.d) < 1e-6);
    CHECK(std::abs(k.a - e.a) < 1e-12);
    CHECK(rel(k.b, e.b) < 1e-6);
}

TEST_CASE("components_numeric c matches at M > 0")
{
    for (double m : {0.5, 1.0, 2.0}) {
        const auto k = components_numeric(0.25, m);
        const auto e = components_closed_form(0.25, m);
        CHECK(rel(k.c, e.c) < 1e-8);
        CHECK(rel(k.a, e.a) < 1e-8);
    }
}

TEST_CASE("components_numeric d at M > 0 departs from the M-independent closed form")
{
    // The time-derivative of the regularized function depends on M; the
    // closed-form d is its M = 0 value.
    const auto k = components_numeric(0.25, 1.0);
    const auto e = components_closed_form(0.25, 1.0);
    CHECK(rel(k.d, e.d) > 1e-3);
    const auto k0 = components_numeric(0.25, 1e-4);
    CHECK(rel(k0.d, e.d) < 1e-5);
}

TEST_CASE("components_numeric across a grid")
{
    for (double dx = 0.1; dx < 0.95; dx += 0.1) {
        const auto k = components_numeric(dx, 0.0);
        const auto e = components_closed_form(dx, 0.0);
        CAPTURE(dx);
        CHECK(rel(k.c, e.c) < 1e-8);
        CHECK(rel(k.d, e.d) < 1e-6);
    }
}

TEST_CASE("mixed_time_derivative reports non-convergence")
{
    // A kink at t = t' defeats the stencil.
    auto kink = [](double t, double tp) { return std::abs(tp - t); };
    CHECK_THROWS_AS(mixed_time_derivative(kink, 1e-3, 1e-6), ConvergenceError);
    auto smooth = [](double t, double tp) { return std::cos(tp - t); };
    CHECK(mixed_time_derivative(smooth, 1e-2, 1e-6) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("momentum_correlator reproduces the massless cylinder form")
{
    for (double dx : {0.1, 0.25, 0.5}) {
        const double expected = -pi / 2.0 / std::pow(std::sin(pi * dx), 2);
        CHECK(rel(momentum_correlator(dx, 0.0), expected) < 1e-7);
    }
}

TEST_CASE("CylinderPoint light-cone coordinates")
{
    const CylinderPoint p{0.3, 0.1, 0.0, 1.0};
    CHECK(p.delta_u() == doctest::Approx(-0.2));
    CHECK(p.delta_v() == doctest::Approx(0.4));
    CHECK(CylinderPoint{0.8, 0.0, 0.0, 1.0}.wrapped_dx() == doctest::Approx(-0.2));
    CHECK(circle_distance(0.8) == doctest::Approx(0.2));
}

TEST_CASE("cancellation-free helpers against extended precision")
{
    // Both sides of the series switch, where the direct forms cancel most.
    for (double x : {0.01, 0.05, 0.2, 0.45, 0.4999, 0.5001, 0.55, 0.9, 2.0}) {
        const long double lx = x;
        CAPTURE(x);
        CHECK(rel(stable::sin_minus_x(x), static_cast<double>(sinl(lx) - lx)) < 1e-13);
        CHECK(rel(stable::sinh_minus_x(x), static_cast<double>(sinhl(lx) - lx)) < 1e-13);
        const long double s = sinl(lx);
        CHECK(rel(stable::inv_sq_minus_csc_sq(x), static_cast<double>(1.0L / (lx * lx) - 1.0L / (s * s))) < 1e-13);
        CHECK(rel(stable::log_x_csch_x(x), static_cast<double>(logl(lx / sinhl(lx)))) < 1e-13);
    }
}
