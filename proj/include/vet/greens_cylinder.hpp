#pragma once

// Thermal Hadamard function of a massive scalar on the 1+1 dimensional
// cylinder (spatial circle of circumference R), its free-space counterpart,
// and the regularized equal-time correlators built from their difference.
//
// Conventions: G(x, x') = <{phi(x), phi(x')}>, so the symmetrized correlator
// is G/2. All thermal and mass dependence enters through M = m * beta, which
// shifts both light-cone arguments by i*M.

#include <functional>

namespace vet {

struct CylinderPoint {
    double delta_x = 0.0;
    double delta_t = 0.0;
    double big_m = 0.0;
    double radius = 1.0;

    // Throws DomainError unless radius > 0, big_m >= 0, |delta_x| < radius.
    void validate() const;

    // delta_x reduced to the nearest image, in [-R/2, R/2].
    double wrapped_dx() const;

    // Light-cone separations built from the nearest-image delta_x.
    double delta_u() const { return -wrapped_dx() + delta_t; }
    double delta_v() const { return wrapped_dx() + delta_t; }
};

struct GreensValue {
    double value = 0.0;
    double imaginary_residual = 0.0;
};

// The regularized scalars entering the two-point covariance matrix. The
// primed entries belong to the second point.
struct CovarianceComponents {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double a_prime = 0.0;
    double b_prime = 0.0;
};

// Distance between two points on the circle, in [0, R/2].
double circle_distance(double delta_x, double radius = 1.0);

// Real part of -ln(16 [sin(pi(du + iM)/R) sin(pi(dv + iM)/R)]^2)/(4 pi),
// principal branch. At equal times the imaginary part must vanish
// (NonRealError otherwise). DomainError on a zero of either sine factor.
GreensValue hadamard_g(const CylinderPoint& p);

// Large-R asymptote of hadamard_g, including the ln R / pi constant.
GreensValue free_space_g0(const CylinderPoint& p);

// hadamard_g - free_space_g0, evaluated as a sum of ln|sin(w)/w| terms so the
// coincident-point divergences cancel analytically.
GreensValue regularized_gr(const CylinderPoint& p);

// Closed-form (a, b, c, d) at the circle distance of delta_x; a' = a, b' = b.
// DomainError if delta_x is 0 or R (mod R) or outside (-R, R).
CovarianceComponents components_closed_form(double delta_x, double big_m, double radius = 1.0);

struct NumericOptions {
    double step = 1e-3;      // in units of R
    double tolerance = 1e-6; // relative agreement of successive Richardson estimates
};

// Same scalars from regularized_gr: c from the equal-time value, d from a
// Richardson-extrapolated central stencil for d/dt d/dt'. a and b are the
// delta_x -> 0 values of the same expressions.
CovarianceComponents components_numeric(double delta_x, double big_m, double radius = 1.0,
                                        NumericOptions options = {});

// d/dt d/dt' f(t, t') at t = t' = 0 with a 4-point stencil, Richardson
// extrapolated over (h, h/2) and checked against (h/2, h/4).
double mixed_time_derivative(const std::function<double(double, double)>& f, double step,
                             double tolerance);

// Unregularized equal-time momentum correlator <{pi, pi'}>/2 from hadamard_g.
double momentum_correlator(double delta_x, double big_m, double radius = 1.0,
                           NumericOptions options = {});

} // namespace vet
