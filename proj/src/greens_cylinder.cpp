#include "vet/greens_cylinder.hpp"

#include "vet/errors.hpp"
#include "vet/stable_math.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace vet {

using stable::pi;

namespace {

constexpr double equal_time_residual_tol = 1e-12;

void check_equal_time_residual(const CylinderPoint& p, const GreensValue& g, const char* what)
{
    if (p.delta_t != 0.0)
        return;
    if (g.imaginary_residual > equal_time_residual_tol * std::max(1.0, std::abs(g.value))) {
        std::ostringstream msg;
        msg << what << ": imaginary residual " << g.imaginary_residual << " at equal times (dx="
            << p.delta_x << ", M=" << p.big_m << ")";
        throw NonRealError(msg.str());
    }
}

void validate_separation(double delta_x, double big_m, double radius)
{
    CylinderPoint{delta_x, 0.0, big_m, radius}.validate();
    if (std::remainder(delta_x, radius) == 0.0)
        throw DomainError("components: delta_x must not coincide with 0 or R (mod R)");
}

} // namespace

void CylinderPoint::validate() const
{
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("CylinderPoint: radius must be positive and finite");
    if (!(big_m >= 0.0) || !std::isfinite(big_m))
        throw DomainError("CylinderPoint: M must be non-negative and finite");
    if (!std::isfinite(delta_x) || !std::isfinite(delta_t))
        throw DomainError("CylinderPoint: separations must be finite");
    if (!(std::abs(delta_x) < radius))
        throw DomainError("CylinderPoint: |delta_x| must be smaller than the radius");
}

double CylinderPoint::wrapped_dx() const
{
    return std::remainder(delta_x, radius);
}

double circle_distance(double delta_x, double radius)
{
    return std::abs(std::remainder(delta_x, radius));
}

GreensValue hadamard_g(const CylinderPoint& p)
{
    p.validate();
    const double du = p.delta_u();
    const double dv = p.delta_v();
    if (p.big_m == 0.0 && (std::remainder(du, p.radius) == 0.0 || std::remainder(dv, p.radius) == 0.0))
        throw DomainError("hadamard_g: logarithmic singularity (massless, zero temperature, null separation)");

    const double x1 = pi * du / p.radius;
    const double x2 = pi * dv / p.radius;
    const double y = pi * p.big_m / p.radius;

    GreensValue g;
    g.value = -(std::log(16.0) + 2.0 * stable::log_abs_sin(x1, y) + 2.0 * stable::log_abs_sin(x2, y))
              / (4.0 * pi);
    const double arg = std::remainder(2.0 * (stable::arg_sin(x1, y) + stable::arg_sin(x2, y)), 2.0 * pi);
    g.imaginary_residual = std::abs(arg) / (4.0 * pi);
    check_equal_time_residual(p, g, "hadamard_g");
    return g;
}

GreensValue free_space_g0(const CylinderPoint& p)
{
    p.validate();
    const std::complex<double> z1{p.delta_u(), p.big_m};
    const std::complex<double> z2{p.delta_v(), p.big_m};
    if (z1 == 0.0 || z2 == 0.0)
        throw DomainError("free_space_g0: logarithmic singularity (massless, zero temperature, null separation)");

    GreensValue g;
    g.value = std::log(p.radius) / pi
              - (std::log(16.0) + 2.0 * std::log(pi * std::abs(z1)) + 2.0 * std::log(pi * std::abs(z2)))
                    / (4.0 * pi);
    const double arg = std::remainder(2.0 * (std::arg(z1) + std::arg(z2)), 2.0 * pi);
    g.imaginary_residual = std::abs(arg) / (4.0 * pi);
    check_equal_time_residual(p, g, "free_space_g0");
    return g;
}

GreensValue regularized_gr(const CylinderPoint& p)
{
    p.validate();
    const double scale = pi / p.radius;
    const std::complex<double> w1{scale * p.delta_u(), scale * p.big_m};
    const std::complex<double> w2{scale * p.delta_v(), scale * p.big_m};

    GreensValue g;
    g.value = -(stable::log_abs_sinc(w1) + stable::log_abs_sinc(w2)) / (2.0 * pi);
    const double arg = std::remainder(2.0 * (stable::arg_sinc(w1) + stable::arg_sinc(w2)), 2.0 * pi);
    g.imaginary_residual = std::abs(arg) / (4.0 * pi);
    check_equal_time_residual(p, g, "regularized_gr");
    return g;
}

CovarianceComponents components_closed_form(double delta_x, double big_m, double radius)
{
    validate_separation(delta_x, big_m, radius);
    const double y = pi * circle_distance(delta_x, radius) / radius;
    const double mu = pi * big_m / radius;

    CovarianceComponents k;
    k.a = stable::log_x_csch_x(mu) / (2.0 * pi);
    k.b = -pi / (6.0 * radius * radius);
    k.c = -stable::log_sinc_sq_ratio(y, mu) / (4.0 * pi);
    k.d = pi / (2.0 * radius * radius) * stable::inv_sq_minus_csc_sq(y);
    k.a_prime = k.a;
    k.b_prime = k.b;
    return k;
}

double mixed_time_derivative(const std::function<double(double, double)>& f, double step,
                             double tolerance)
{
    if (!(step > 0.0))
        throw DomainError("mixed_time_derivative: step must be positive");
    auto stencil = [&](double h) {
        return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
    };
    const double d1 = stencil(step);
    const double d2 = stencil(step / 2.0);
    const double d4 = stencil(step / 4.0);
    const double coarse = (4.0 * d2 - d1) / 3.0;
    const double fine = (4.0 * d4 - d2) / 3.0;
    if (std::abs(coarse - fine) > tolerance * std::max(std::abs(fine), 1e-12)) {
        std::ostringstream msg;
        msg << "mixed_time_derivative: Richardson estimates " << coarse << " and " << fine
            << " disagree beyond " << tolerance;
        throw ConvergenceError(msg.str());
    }
    return fine;
}

CovarianceComponents components_numeric(double delta_x, double big_m, double radius,
                                        NumericOptions options)
{
    validate_separation(delta_x, big_m, radius);
    if (!(options.step > 0.0))
        throw DomainError("components_numeric: step must be positive");

    auto half_gr = [&](double dx) {
        return [dx, big_m, radius](double t, double t_prime) {
            return 0.5 * regularized_gr({dx, t_prime - t, big_m, radius}).value;
        };
    };
    const double h = options.step * radius;

    CovarianceComponents k;
    k.c = 0.5 * regularized_gr({delta_x, 0.0, big_m, radius}).value;
    k.d = mixed_time_derivative(half_gr(delta_x), h, options.tolerance);
    k.a = 0.5 * regularized_gr({0.0, 0.0, big_m, radius}).value;
    k.b = mixed_time_derivative(half_gr(0.0), h, options.tolerance);
    k.a_prime = k.a;
    k.b_prime = k.b;
    return k;
}

double momentum_correlator(double delta_x, double big_m, double radius, NumericOptions options)
{
    validate_separation(delta_x, big_m, radius);
    auto half_g = [delta_x, big_m, radius](double t, double t_prime) {
        return 0.5 * hadamard_g({delta_x, t_prime - t, big_m, radius}).value;
    };
    return mixed_time_derivative(half_g, options.step * radius, options.tolerance);
}

} // namespace vet
